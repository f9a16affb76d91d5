#include "varpois/pva.hpp"

#include <cstdlib>
#include <omp.h>

namespace vp {

namespace {

int g_threads = 0;

int threads_from_env() {
    const char* s = std::getenv("VARPOIS_THREADS");
    if (!s) return 0;
    int n = std::atoi(s);
    return n > 0 ? n : 0;
}

}  // namespace

void set_thread_limit(int n) { g_threads = n > 0 ? n : 0; }

int thread_limit() {
    if (g_threads > 0) return g_threads;
    static const int env = threads_from_env();
    return env > 0 ? env : omp_get_max_threads();
}

LPoly lambda_bracket_in(const DiffPoly& f, const DiffPoly& g, const Hamiltonian& H, unsigned nv, unsigned k) {
    unsigned ell = H.ell();
    LinForm plus = LinForm::var(nv, k);
    plus.d = 1;
    LinForm minus = plus.negated();
    LPoly out(nv);
    for (unsigned i = 1; i <= ell; ++i) {
        int mi = f.max_order(i);
        if (mi < 0) continue;
        LPoly x(nv);
        for (int m = 0; m <= mi; ++m)
            x += LPoly::constant(nv, f.partial(i, static_cast<unsigned>(m))).apply_power(minus, static_cast<unsigned>(m));
        if (x.is_zero()) continue;
        for (unsigned j = 1; j <= ell; ++j) {
            int nj = g.max_order(j);
            if (nj < 0) continue;
            const DiffOp& hji = H.H.at(j - 1, i - 1);
            if (hji.is_zero()) continue;
            LPoly y(nv);
            for (auto& [p, c] : hji.coeffs()) y += c * x.apply_power(plus, p);
            for (int n = 0; n <= nj; ++n) {
                DiffPoly dg = g.partial(j, static_cast<unsigned>(n));
                if (dg.is_zero()) continue;
                out += dg * y.apply_power(plus, static_cast<unsigned>(n));
            }
        }
    }
    return out;
}

LPoly lambda_bracket(const DiffPoly& f, const DiffPoly& g, const Hamiltonian& H) {
    return lambda_bracket_in(f, g, H, 1, 0);
}

bool check_skewadjoint(const Hamiltonian& H) { return H.H.square() && H.H.adjoint() == -H.H; }

namespace {

// sum_b var_other^b {f_var g_b} where inner = sum_b var_other^b g_b (one variable)
LPoly outer(const DiffPoly& f, const LPoly& inner, const Hamiltonian& A, unsigned var, unsigned other) {
    LPoly r(2);
    for (auto& [e, gb] : inner.terms()) r += lambda_bracket_in(f, gb, A, 2, var).mul_var(other, e[0]);
    return r;
}

}  // namespace

LPoly jacobi_term(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h, const Hamiltonian& A, const Hamiltonian& B) {
    // lambda = var 0, mu = var 1
    LPoly t1 = outer(f, lambda_bracket(g, h, B), A, 0, 1);
    LPoly t2 = outer(g, lambda_bracket(f, h, B), A, 1, 0);
    LPoly t3(2);
    LPoly fg = lambda_bracket(f, g, B);
    LinForm nu{{1, 1}, 0};
    for (auto& [e, fa] : fg.terms())
        t3 += lambda_bracket(fa, h, A).substitute(2, {nu}).mul_var(0, e[0]);
    return t1 - t2 - t3;
}

LPoly jacobi_residual(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h, const Hamiltonian& H) {
    return jacobi_term(f, g, h, H, H);
}

LPoly compat_residual(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h, const Hamiltonian& H, const Hamiltonian& K) {
    return -(jacobi_term(f, g, h, H, K) + jacobi_term(f, g, h, K, H));
}

namespace {

template <class Fn>
TripleCheck run_triples(unsigned ell, Fn residual, bool parallel) {
    std::size_t n = static_cast<std::size_t>(ell) * ell * ell;
    std::vector<LPoly> res(n, LPoly(2));
    auto one = [&](std::size_t t) {
        unsigned i = static_cast<unsigned>(t / (ell * ell)) + 1, j = static_cast<unsigned>(t / ell % ell) + 1,
                 k = static_cast<unsigned>(t % ell) + 1;
        res[t] = residual(DiffPoly::jet(i), DiffPoly::jet(j), DiffPoly::jet(k));
    };
    if (parallel) {
        long nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
        for (long t = 0; t < nn; ++t) one(static_cast<std::size_t>(t));
    } else {
        for (std::size_t t = 0; t < n; ++t) one(t);
    }
    TripleCheck out;
    for (std::size_t t = 0; t < n; ++t)
        if (!res[t].is_zero()) {
            out.ok = false;
            out.triple = {static_cast<unsigned>(t / (ell * ell)) + 1, static_cast<unsigned>(t / ell % ell) + 1,
                          static_cast<unsigned>(t % ell) + 1};
            out.residual = res[t];
            break;
        }
    return out;
}

TripleCheck jacobi_impl(const Hamiltonian& H, bool parallel) {
    if (!check_skewadjoint(H)) throw NotSkewadjoint("H(d) is not skewadjoint");
    return run_triples(H.ell(), [&](const DiffPoly& a, const DiffPoly& b, const DiffPoly& c) { return jacobi_residual(a, b, c, H); },
                       parallel);
}

TripleCheck compat_impl(const Hamiltonian& H, const Hamiltonian& K, bool parallel) {
    if (H.ell() != K.ell()) throw ShapeMismatch("operators act on different numbers of components");
    return run_triples(
        H.ell(), [&](const DiffPoly& a, const DiffPoly& b, const DiffPoly& c) { return compat_residual(a, b, c, H, K); }, parallel);
}

}  // namespace

TripleCheck check_jacobi(const Hamiltonian& H) { return jacobi_impl(H, true); }
TripleCheck check_jacobi_serial(const Hamiltonian& H) { return jacobi_impl(H, false); }
TripleCheck check_compatible(const Hamiltonian& H, const Hamiltonian& K) { return compat_impl(H, K, true); }
TripleCheck check_compatible_serial(const Hamiltonian& H, const Hamiltonian& K) { return compat_impl(H, K, false); }

DiffPoly ev_apply(const EvField& X, const DiffPoly& f) {
    DiffPoly out;
    for (unsigned i = 1; i <= X.P.size(); ++i) {
        int top = f.max_order(i);
        DiffPoly dp = X.P[i - 1];
        for (int n = 0; n <= top; ++n) {
            DiffPoly pf = f.partial(i, static_cast<unsigned>(n));
            if (!pf.is_zero()) out += dp * pf;
            dp = dp.derivative();
        }
    }
    return out;
}

EvField ev_commutator(const EvField& P, const EvField& Q) {
    EvField r;
    for (std::size_t i = 0; i < P.P.size(); ++i) r.P.push_back(ev_apply(P, Q.P[i]) - ev_apply(Q, P.P[i]));
    return r;
}

MatDiffOp ad_field_on_operator(const EvField& P, const Hamiltonian& H) {
    unsigned ell = H.ell();
    MatDiffOp xh = H.H.map<DiffPoly>([&](const DiffPoly& c) { return ev_apply(P, c); });
    MatDiffOp dp = frechet(P.P, ell);
    return xh - H.H * dp.adjoint() - dp * H.H;
}

EvField hamiltonian_vf(const LocalFunctional& h, const Hamiltonian& H) {
    return EvField{H.H.apply(variational_derivative(h.rep, H.ell()))};
}

LocalFunctional poisson_bracket(const LocalFunctional& f, const LocalFunctional& g, const Hamiltonian& H) {
    DVec df = variational_derivative(f.rep, H.ell()), dg = variational_derivative(g.rep, H.ell());
    DVec hf = H.H.apply(df);
    DiffPoly s;
    for (std::size_t i = 0; i < dg.size(); ++i) s += dg[i] * hf[i];
    return LocalFunctional{s};
}

}  // namespace vp
