#pragma once

#include <vector>

#include "varpois/diffop.hpp"
#include "varpois/lpoly.hpp"

namespace vp {

using DVec = std::vector<DiffPoly>;

// Element of V / dV.
struct LocalFunctional {
    DiffPoly rep;
};

DiffPoly total_derivative(const DiffPoly& f);
DiffPoly jet_partial(const DiffPoly& f, unsigned i, unsigned n);
DVec variational_derivative(const DiffPoly& f, unsigned ell);
LPoly higher_euler(const DiffPoly& f, unsigned i);  // one variable lambda
MatDiffOp frechet(const DVec& F, unsigned ell);
bool is_exact_1form(const DVec& F, unsigned ell);
DiffPoly reconstruct_density(const DVec& F, unsigned ell);  // throws NotExact

// residue test for f in dV + F
bool in_total_derivatives(const DiffPoly& f, unsigned ell);
bool functional_eq(const LocalFunctional& a, const LocalFunctional& b, unsigned ell);

}  // namespace vp
