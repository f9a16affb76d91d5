#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "varpois/complexes.hpp"

namespace vp {

using Int = mpz_class;
using Tuple = std::vector<unsigned>;
using Perm = std::vector<unsigned>;  // p[r] = sigma(r)

// k-differential operator on F^ell: entries P_{i0,i1..ik}(lambda_1..lambda_k)
// with quasiconstant coefficients, every index tuple stored explicitly.
class KDiffOp {
public:
    KDiffOp() = default;
    KDiffOp(unsigned k, unsigned ell) : k_(k), ell_(ell) {}

    unsigned arity() const { return k_; }
    unsigned ell() const { return ell_; }
    const std::map<Index, LPoly>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }

    LPoly at(const Index& t) const;
    void set(const Index& t, const LPoly& p);
    void add(const Index& t, const LPoly& p);

    KDiffOp operator-() const;
    KDiffOp& operator+=(const KDiffOp& o);
    KDiffOp& operator-=(const KDiffOp& o);
    KDiffOp& operator*=(const DiffPoly& c);
    friend KDiffOp operator+(KDiffOp a, const KDiffOp& b) { return a += b; }
    friend KDiffOp operator-(KDiffOp a, const KDiffOp& b) { return a -= b; }
    friend KDiffOp operator*(const DiffPoly& c, KDiffOp a) { return a *= c; }
    bool operator==(const KDiffOp& o) const { return k_ == o.k_ && e_ == o.e_; }
    bool operator!=(const KDiffOp& o) const { return !(*this == o); }

    unsigned max_degree() const;
    static std::vector<Index> all_tuples(unsigned n, unsigned ell);
    // k = 1 operators are matrix differential operators with lambda = d
    static KDiffOp from_matrix(const MatFieldOp& m);
    MatFieldOp to_matrix() const;
    std::string str() const;

private:
    unsigned k_ = 0, ell_ = 1;
    std::map<Index, LPoly> e_;
};

KDiffOp sigma_action(const KDiffOp& P, const Perm& sigma);
Perm compose(const Perm& a, const Perm& b);  // (a b)(r) = a(b(r))
int sign(const Perm& p);
bool is_skewsymmetric(const KDiffOp& P);
bool is_totally_skewsymmetric(const KDiffOp& P);
KDiffOp total_skewsymmetrize(const KDiffOp& P);
KDiffOp total_skewsymmetrize_skew(const KDiffOp& P);  // shortcut for skewsymmetric P
KDiffOp module_action(const MatFieldOp& K, const KDiffOp& P);
KDiffOp module_action(const MatDiffOp& K, const KDiffOp& P);
// P(F^1, ..., F^k)
std::vector<DiffPoly> kdiff_apply(const KDiffOp& P, const std::vector<std::vector<DiffPoly>>& F);

Int coeff_c(const Tuple& n, const Tuple& m);  // throws BadSupport
Int coeff_b(const Tuple& n, const Tuple& m);  // throws BadSupport
const std::map<Tuple, Int>& c_expansion(const Tuple& n);
const std::map<Tuple, Int>& b_expansion(const Tuple& n);
void clear_coefficient_tables();

struct ExpansionTerm {
    Tuple m;
    Int c;
    long d_power;  // sum (n_i - m_i), may be negative
};
std::vector<ExpansionTerm> expand_monomial(const Tuple& n);

struct SigmaSpace {
    std::vector<KDiffOp> basis;
    unsigned long expected = 0;  // C(N ell, k+1)
    bool lower_bound = false;
};
// skewsymmetric P, degree <= N-1 per variable, with <K* o P>^- = 0
SigmaSpace sigma_space(const MatFieldOp& K, unsigned k, int degree_bound = -1);
bool in_sigma(const MatFieldOp& K, const KDiffOp& P);
// skewsymmetric P with (k+1) <K o P>^- = S
KDiffOp solve_skew_equation(const MatFieldOp& K, const KDiffOp& S, int degree_bound = -1);
// (sum_j P_{j,i1..ik}(lambda) u_j) in tilde Omega^k
SkewArray chi_representative(const MatFieldOp& K, const KDiffOp& P);

}  // namespace vp
