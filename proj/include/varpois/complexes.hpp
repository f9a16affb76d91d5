#pragma once

#include <map>
#include <utility>
#include <vector>

#include "varpois/pva.hpp"

namespace vp {

using Index = std::vector<unsigned>;  // 1-based generator indices

// Skewsymmetric array of polynomials in lambda_1..lambda_k (LPoly variables 0..k-1).
// Only nondecreasing index tuples are stored.
class SkewArray {
public:
    SkewArray() = default;
    SkewArray(unsigned k, unsigned ell) : k_(k), ell_(ell) {}

    unsigned arity() const { return k_; }
    unsigned ell() const { return ell_; }
    const std::map<Index, LPoly>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }

    // stored entry for a sorted key; the caller is responsible for skewsymmetry
    void set(const Index& sorted, const LPoly& p);
    void add(const Index& sorted, const LPoly& p);
    LPoly stored(const Index& sorted) const;
    // entry for any tuple by the sign rule
    LPoly at(const Index& tuple) const;

    SkewArray operator-() const;
    SkewArray& operator+=(const SkewArray& o);
    SkewArray& operator-=(const SkewArray& o);
    SkewArray& operator*=(const DiffPoly& c);
    friend SkewArray operator+(SkewArray a, const SkewArray& b) { return a += b; }
    friend SkewArray operator-(SkewArray a, const SkewArray& b) { return a -= b; }
    friend SkewArray operator*(const DiffPoly& c, SkewArray a) { return a *= c; }
    bool operator==(const SkewArray& o) const { return k_ == o.k_ && e_ == o.e_; }
    bool operator!=(const SkewArray& o) const { return !(*this == o); }

    SkewArray map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& fn) const;
    bool is_skew() const;

    static SkewArray scalar(unsigned ell, const DiffPoly& f);  // arity 0
    // antisymmetrization of an arbitrary (not necessarily skew) array given on all tuples
    static SkewArray antisymmetrize(unsigned k, unsigned ell, const std::function<LPoly(const Index&)>& entry);
    static std::vector<Index> sorted_keys(unsigned k, unsigned ell);

    std::string str() const;

private:
    unsigned k_ = 0, ell_ = 1;
    std::map<Index, LPoly> e_;
};

// polynomial with variable r renamed to perm[r]
LPoly rename_vars(const LPoly& p, unsigned nv_target, const std::vector<unsigned>& perm);

// element of Omega^k = tilde Omega^k / d tilde Omega^k
struct QuotientArray {
    SkewArray rep;
    // last lambda eliminated; arity 0 has no normal form
    std::map<Index, LPoly> normal_form() const;
    bool equals(const QuotientArray& o) const;
    bool is_zero() const;
};

struct FiltrationLevel {
    unsigned m = 0;
    unsigned i = 0;
    bool operator==(const FiltrationLevel& o) const { return m == o.m && i == o.i; }
    bool operator!=(const FiltrationLevel& o) const { return !(*this == o); }
    bool operator<(const FiltrationLevel& o) const { return m != o.m ? m < o.m : i < o.i; }
};

SkewArray partial_action(const SkewArray& P);
SkewArray de_rham_delta(const SkewArray& P);
SkewArray delta_K(const SkewArray& P, const MatFieldOp& K);
SkewArray delta_K(const SkewArray& P, const MatDiffOp& K);  // throws NotQuasiconstant
// verify: check skewadjointness and Jacobi first (NotPoisson)
QuotientArray d_K(const QuotientArray& P, const Hamiltonian& K, bool verify = true);

bool in_filtration(const SkewArray& P, FiltrationLevel L, unsigned N);
FiltrationLevel filtration_level(const SkewArray& P, unsigned N);
DiffPoly antiderivative(const DiffPoly& f, unsigned i, unsigned m);
SkewArray homotopy(const SkewArray& P, FiltrationLevel L, unsigned N);

// (Phi_S P)_i(lambda) = sum_j P_j(lambda + d) S_{j1 i1} ... S_{jk ik}
SkewArray phi_S(const SkewArray& P, const MatFieldOp& S);

struct ClosedReduction {
    SkewArray Q;  // arity k-1 (arity 0 and zero when k = 0)
    SkewArray R;  // in tilde Omega_{0,0}
};
ClosedReduction reduce_closed(const SkewArray& P, const MatFieldOp& K);
ClosedReduction reduce_closed(const SkewArray& P, const MatDiffOp& K);

SkewArray alpha_k(const SkewArray& C, const MatFieldOp& K);

unsigned long binomial(unsigned long n, unsigned long k);
struct Omega00Basis {
    std::vector<SkewArray> basis;
    // position used to read off coordinates: key and monomial exponent
    std::vector<std::pair<Index, Exps>> pivots;
};
unsigned long dim_omega00(unsigned N, unsigned ell, unsigned k);
Omega00Basis omega00_basis(unsigned N, unsigned ell, unsigned k);
// coordinates over F of an element of tilde Omega_{0,0}
std::vector<RatFunc> omega00_coords(const Omega00Basis& B, const SkewArray& P);

struct CohomologyResult {
    unsigned dim = 0;
    bool lower_bound = false;  // some solutions may be non-rational
    std::vector<SkewArray> kernel;           // C in ker alpha_{k+1}
    std::vector<SkewArray> representatives;  // arity k, closed in Omega^k
};
CohomologyResult cohomology_dim(const MatFieldOp& K, unsigned k, int degree_bound = -1);

MatDiffOp phi_K1(const MatDiffOp& S, const Hamiltonian& K);  // -K o S o K

MatFieldOp mat_inverse(const MatFieldOp& A);  // order 0; throws LeadingCoeffSingular

}  // namespace vp
