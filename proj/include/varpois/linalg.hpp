#pragma once

#include <map>
#include <optional>
#include <vector>

#include "varpois/diffop.hpp"

namespace vp {

using SparseRow = std::map<std::size_t, RatFunc>;

struct LinearSolution {
    bool consistent = true;
    std::vector<RatFunc> particular;
    std::vector<std::vector<RatFunc>> nullspace;
    bool parametric_pivot = false;  // some pivot depends on declared parameters
};

// Exact Gaussian elimination over Q(p) (or any RatFunc field).
LinearSolution solve_linear(const std::vector<SparseRow>& rows, const std::vector<RatFunc>& rhs, std::size_t n);

// Antiderivative in x inside Q(p)(x); nullopt when a logarithmic part remains.
// Throws UndecidableResidue when the answer may depend on parameter values.
std::optional<RatFunc> rational_antiderivative(const RatFunc& f);

struct RationalSolution {
    std::vector<RatFunc> particular;
    std::vector<std::vector<RatFunc>> basis;  // homogeneous solutions, independent over constants
    bool complete = false;                    // basis size reaches the kernel dimension bound
    int degree_bound = 0;
};

// Rational solutions of M u = b via a polynomial ansatz over a fixed denominator.
// Throws NoRationalSolution or Incomplete.
RationalSolution solve_rational(const MatFieldOp& m, const std::vector<RatFunc>& b, int degree_bound = -1);

// Equations linear in jets of u_1..u_q with quasiconstant coefficients become M u = b.
struct LinearDiffSystem {
    MatFieldOp m;
    std::vector<RatFunc> b;
};
LinearDiffSystem linearize(const std::vector<DiffPoly>& eqs, unsigned unknowns);

}  // namespace vp
