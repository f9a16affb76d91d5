#include "varpois/lenard.hpp"

#include <omp.h>

#include <exception>

#include "varpois/complexes.hpp"
#include "varpois/errors.hpp"
#include "varpois/linalg.hpp"

namespace vp {

bool InvolutionMatrix::all() const {
    for (auto* m : {&H, &K})
        for (auto& row : *m)
            for (bool b : row)
                if (!b) return false;
    return true;
}

std::pair<DiffPoly, DiffPoly> integrate_total(const DiffPoly& f) {
    DiffPoly g, r = f;
    while (!r.is_quasiconstant()) {
        JetVar top = r.jets().back();
        if (top.n == 0) return {g, r};
        DiffPoly a = r.partial(top);
        DiffPoly g1;
        try {
            g1 = antiderivative(a, top.i, top.n - 1);
        } catch (const OutOfFiltration&) {
            return {g, r};
        }
        DiffPoly next = r - g1.derivative();
        auto js = next.jets();
        if (!js.empty() && !(js.back() < top)) return {g, r};
        g += g1;
        r = next;
    }
    if (r.is_zero()) return {g, r};
    auto q = rational_antiderivative(r.quasiconstant_part());
    if (!q) return {g, r};
    return {g + DiffPoly(*q), DiffPoly()};
}

namespace {

enum class Shape { Upper, Lower };

std::optional<Shape> triangular(const MatFieldOp& k) {
    bool upper = true, lower = true;
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) {
            if (k.at(i, j).is_zero()) continue;
            if (i > j) upper = false;
            if (i < j) lower = false;
        }
    if (upper) return Shape::Upper;
    if (lower) return Shape::Lower;
    return std::nullopt;
}

MatFieldOp checked_field(const Hamiltonian& K) {
    if (!K.H.square()) throw ShapeMismatch("K must be square");
    MatFieldOp k = quasiconstant_part(K.H);
    if (!triangular(k)) throw DegenerateShape("K is not triangular");
    for (std::size_t i = 0; i < k.rows(); ++i)
        if (k.at(i, i).coeffs().size() != 1) throw DegenerateShape("diagonal entries of K must be a single term a d^n");
    return k;
}

DVec dvar(const LocalFunctional& h, unsigned ell) { return variational_derivative(h.rep, ell); }

}  // namespace

bool lenard_supported(const Hamiltonian& K) {
    try {
        checked_field(K);
        return true;
    } catch (const Error&) {
        return false;
    }
}

namespace {

std::optional<DVec> invert_impl(const MatFieldOp& k, const DVec& F, Obstruction& obs) {
    std::size_t ell = k.rows();
    if (F.size() != ell) throw ShapeMismatch("right-hand side has the wrong length");
    MatDiffOp kd = to_diffpoly(k);
    Shape s = *triangular(k);
    DVec G(ell);
    for (std::size_t step = 0; step < ell; ++step) {
        std::size_t i = s == Shape::Upper ? ell - 1 - step : step;
        DiffPoly rhs = F[i];
        for (std::size_t j = 0; j < ell; ++j)
            if (j != i && !kd.at(i, j).is_zero()) rhs -= kd.at(i, j).apply(G[j]);
        auto [n, a] = *k.at(i, i).coeffs().begin();
        DiffPoly g = rhs * a.inverse();
        for (unsigned t = 0; t < n; ++t) {
            auto [p, r] = integrate_total(g);
            if (!r.is_zero()) {
                obs = Obstruction{"NoPreimage", static_cast<unsigned>(i + 1), {r}, "H dh/du is not in the image of K"};
                return std::nullopt;
            }
            g = p;
        }
        G[i] = g;
    }
    return G;
}

}  // namespace

DVec invert_K(const Hamiltonian& K, const DVec& F) {
    Obstruction obs;
    auto G = invert_impl(checked_field(K), F, obs);
    if (!G) throw NoPreimage("component " + std::to_string(obs.component) + " is not in the image of K: " + obs.witness[0].str());
    return *G;
}

StepResult lenard_step(const HierarchyState& state) {
    if (state.densities.empty()) throw DegenerateShape("hierarchy has no seed density");
    unsigned ell = state.H.ell();
    StepResult out;
    DVec F = state.H.H.apply(dvar(state.densities.back(), ell));
    MatFieldOp k = checked_field(state.K);
    out.kernel_dim = kernel_dim_bound(k);
    Obstruction obs;
    auto G = invert_impl(k, F, obs);
    if (!G) {
        out.obstruction = obs;
        return out;
    }
    out.preimage = *G;
    if (!is_exact_1form(*G, ell)) {
        MatDiffOp D = frechet(*G, ell);
        out.obstruction = Obstruction{"NotExact", 0, *G, "Frechet derivative is not selfadjoint: " + (D - D.adjoint()).str()};
        return out;
    }
    out.density = LocalFunctional{reconstruct_density(*G, ell)};
    return out;
}

bool certify_step(const Hamiltonian& H, const Hamiltonian& K, const LocalFunctional& prev, const LocalFunctional& next) {
    unsigned ell = H.ell();
    DVec a = K.H.apply(dvar(next, ell)), b = H.H.apply(dvar(prev, ell));
    for (unsigned i = 0; i < ell; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

namespace {

InvolutionMatrix involution_impl(const HierarchyState& st, bool parallel) {
    std::size_t n = st.densities.size();
    unsigned ell = st.H.ell();
    InvolutionMatrix out;
    out.H.assign(n, std::vector<bool>(n, false));
    out.K = out.H;
    std::vector<char> h(n * n, 0), k(n * n, 0);
    std::exception_ptr err;
    auto one = [&](std::size_t t) {
        std::size_t a = t / n, b = t % n;
        if (b < a) return;
        const LocalFunctional &f = st.densities[a], &g = st.densities[b];
        h[t] = functional_eq(poisson_bracket(f, g, st.H), LocalFunctional{}, ell);
        k[t] = functional_eq(poisson_bracket(f, g, st.K), LocalFunctional{}, ell);
    };
    long nn = static_cast<long>(n * n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
        for (long t = 0; t < nn; ++t) {
            try {
                one(static_cast<std::size_t>(t));
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (long t = 0; t < nn; ++t) one(static_cast<std::size_t>(t));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            out.H[a][b] = out.H[b][a] = h[a * n + b] != 0;
            out.K[a][b] = out.K[b][a] = k[a * n + b] != 0;
        }
    return out;
}

}  // namespace

InvolutionMatrix verify_involution(const HierarchyState& state) { return involution_impl(state, true); }
InvolutionMatrix verify_involution_serial(const HierarchyState& state) { return involution_impl(state, false); }

bool vector_fields_commute(const HierarchyState& state) {
    std::vector<EvField> X;
    for (auto& h : state.densities) X.push_back(hamiltonian_vf(h, state.K));
    for (std::size_t a = 0; a < X.size(); ++a)
        for (std::size_t b = a + 1; b < X.size(); ++b)
            for (auto& c : ev_commutator(X[a], X[b]).P)
                if (!c.is_zero()) return false;
    return true;
}

HierarchyState run_hierarchy(const Hamiltonian& H, const Hamiltonian& K, const LocalFunctional& seed, unsigned steps,
                             bool check_pair) {
    if (H.ell() != K.ell()) throw ShapeMismatch("H and K act on different numbers of components");
    checked_field(K);
    if (check_pair) {
        if (!check_jacobi(H).ok) throw NotPoisson("H is not a Poisson structure");
        if (!check_jacobi(K).ok) throw NotPoisson("K is not a Poisson structure");
        if (!check_compatible(H, K).ok) throw NotPoisson("H and K are not compatible");
    }
    HierarchyState st{H, K, {seed}, {}, std::nullopt};
    for (unsigned s = 0; s < steps; ++s) {
        StepResult r = lenard_step(st);
        if (r.obstruction) {
            st.obstruction = r.obstruction;
            break;
        }
        StepCertificate c;
        c.recursion = certify_step(H, K, st.densities.back(), *r.density);
        c.kernel_dim = r.kernel_dim;
        st.densities.push_back(*r.density);
        st.certificates.push_back(c);
    }
    return st;
}

}  // namespace vp
