#include "varpois/diffalg.hpp"

#include "varpois/linalg.hpp"

namespace vp {

DiffPoly total_derivative(const DiffPoly& f) { return f.derivative(); }

DiffPoly jet_partial(const DiffPoly& f, unsigned i, unsigned n) { return f.partial(i, n); }

DVec variational_derivative(const DiffPoly& f, unsigned ell) {
    DVec out(ell);
    for (unsigned i = 1; i <= ell; ++i) {
        int top = f.max_order(i);
        for (int n = top; n >= 0; --n) {
            // Horner in -d
            out[i - 1] = f.partial(i, static_cast<unsigned>(n)) - out[i - 1].derivative();
        }
    }
    return out;
}

LPoly higher_euler(const DiffPoly& f, unsigned i) {
    LPoly r(1);
    LinForm minus{{-1}, -1};
    for (int n = 0; n <= f.max_order(i); ++n)
        r += LPoly::constant(1, f.partial(i, static_cast<unsigned>(n))).apply_power(minus, static_cast<unsigned>(n));
    return r;
}

MatDiffOp frechet(const DVec& F, unsigned ell) {
    MatDiffOp d(F.size(), ell);
    for (std::size_t i = 0; i < F.size(); ++i)
        for (JetVar v : F[i].jets()) {
            if (v.i < 1 || v.i > ell) throw ArityError("jet index exceeds number of components");
            d.at(i, v.i - 1).add_term(v.n, F[i].partial(v));
        }
    return d;
}

bool is_exact_1form(const DVec& F, unsigned ell) {
    if (F.size() != ell) return false;
    MatDiffOp d = frechet(F, ell);
    return d.adjoint() == d;
}

DiffPoly reconstruct_density(const DVec& F, unsigned ell) {
    if (!is_exact_1form(F, ell)) throw NotExact("Frechet derivative is not selfadjoint");
    DiffPoly h;
    for (unsigned i = 1; i <= ell; ++i)
        for (auto& [d, part] : F[i - 1].homogeneous_parts())
            h += DiffPoly::jet(i) * part * FieldElem(Rat(1, static_cast<long>(d + 1)));
    return h;
}

bool in_total_derivatives(const DiffPoly& f, unsigned ell) {
    for (auto& e : variational_derivative(f, ell))
        if (!e.is_zero()) return false;
    FieldElem r = f.quasiconstant_part();
    return rational_antiderivative(r).has_value();
}

bool functional_eq(const LocalFunctional& a, const LocalFunctional& b, unsigned ell) {
    return in_total_derivatives(a.rep - b.rep, ell);
}

}  // namespace vp
