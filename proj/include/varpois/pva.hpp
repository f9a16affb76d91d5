#pragma once

#include <array>
#include <optional>

#include "varpois/diffalg.hpp"

namespace vp {

// H_ij(d) = {u_j _d u_i}->
struct Hamiltonian {
    MatDiffOp H;
    unsigned ell() const { return static_cast<unsigned>(H.rows()); }
};

struct EvField {
    DVec P;
};

// Master formula; the result is an LPoly in one variable.
LPoly lambda_bracket(const DiffPoly& f, const DiffPoly& g, const Hamiltonian& H);
// {f_lambda_k g} as a polynomial in nv variables, lambda_k = variable k
LPoly lambda_bracket_in(const DiffPoly& f, const DiffPoly& g, const Hamiltonian& H, unsigned nv, unsigned k);

bool check_skewadjoint(const Hamiltonian& H);

struct TripleCheck {
    bool ok = true;
    std::array<unsigned, 3> triple{0, 0, 0};  // 1-based generator indices of the first failure
    LPoly residual{2};
};

// {f_l {g_m h}_B}_A - {g_m {f_l h}_B}_A - {{f_l g}_B _{l+m} h}_A in (lambda, mu)
LPoly jacobi_term(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h, const Hamiltonian& A, const Hamiltonian& B);
LPoly jacobi_residual(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h, const Hamiltonian& H);
// [H,K]_{l,m}(f,g,h) of the k = 2 bracket formula
LPoly compat_residual(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h, const Hamiltonian& H, const Hamiltonian& K);

TripleCheck check_jacobi(const Hamiltonian& H);                  // parallel over generator triples
TripleCheck check_jacobi_serial(const Hamiltonian& H);
TripleCheck check_compatible(const Hamiltonian& H, const Hamiltonian& K);
TripleCheck check_compatible_serial(const Hamiltonian& H, const Hamiltonian& K);

DiffPoly ev_apply(const EvField& X, const DiffPoly& f);
EvField ev_commutator(const EvField& P, const EvField& Q);
MatDiffOp ad_field_on_operator(const EvField& P, const Hamiltonian& H);
EvField hamiltonian_vf(const LocalFunctional& h, const Hamiltonian& H);
LocalFunctional poisson_bracket(const LocalFunctional& f, const LocalFunctional& g, const Hamiltonian& H);

void set_thread_limit(int n);  // <= 0 restores the default
int thread_limit();

}  // namespace vp
