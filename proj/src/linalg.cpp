#include "varpois/linalg.hpp"

#include <algorithm>

namespace vp {

namespace {

bool depends_on_params(const RatFunc& r) { return !r.is_rational(); }

struct Pivot {
    SparseRow row;  // pivot coefficient normalized to 1
    RatFunc rhs;
};

}  // namespace

LinearSolution solve_linear(const std::vector<SparseRow>& rows, const std::vector<RatFunc>& rhs, std::size_t n) {
    LinearSolution sol;
    std::map<std::size_t, Pivot> piv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        SparseRow row = rows[r];
        RatFunc b = rhs[r];
        for (auto it = row.begin(); it != row.end();) {
            if (it->second.is_zero()) it = row.erase(it);
            else ++it;
        }
        // reduce by existing pivots; pivots are fully reduced against each other
        std::vector<std::size_t> hits;
        for (auto& [c, v] : row)
            if (piv.count(c)) hits.push_back(c);
        for (std::size_t c : hits) {
            auto f = row.find(c);
            if (f == row.end()) continue;
            RatFunc k = f->second;
            const Pivot& p = piv.at(c);
            for (auto& [cc, v] : p.row) {
                RatFunc nv = row[cc] - k * v;
                if (nv.is_zero()) row.erase(cc);
                else row[cc] = nv;
            }
            b -= k * p.rhs;
        }
        if (row.empty()) {
            if (!b.is_zero()) sol.consistent = false;
            continue;
        }
        auto best = row.begin();
        for (auto it = row.begin(); it != row.end(); ++it)
            if (it->second.is_rational()) {
                best = it;
                break;
            }
        std::size_t pc = best->first;
        if (depends_on_params(best->second)) sol.parametric_pivot = true;
        RatFunc inv = best->second.inverse();
        for (auto& [c, v] : row) v *= inv;
        b *= inv;
        Pivot np{row, b};
        for (auto& [c, p] : piv) {
            auto f = p.row.find(pc);
            if (f == p.row.end()) continue;
            RatFunc k = f->second;
            for (auto& [cc, v] : np.row) {
                RatFunc nv = p.row[cc] - k * v;
                if (nv.is_zero()) p.row.erase(cc);
                else p.row[cc] = nv;
            }
            p.rhs -= k * np.rhs;
        }
        piv.emplace(pc, std::move(np));
    }
    if (!sol.consistent) return sol;
    sol.particular.assign(n, RatFunc());
    for (auto& [c, p] : piv) sol.particular[c] = p.rhs;
    for (std::size_t f = 0; f < n; ++f) {
        if (piv.count(f)) continue;
        std::vector<RatFunc> v(n);
        v[f] = RatFunc(1);
        for (auto& [c, p] : piv) {
            auto it = p.row.find(f);
            if (it != p.row.end()) v[c] = -it->second;
        }
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

// ------------------------------------------------------------ integration

namespace {

using UPoly = std::vector<RatFunc>;  // coefficients in x, free of x

UPoly to_upoly(const Poly& p) {
    auto cs = p.coeffs_in(kVarX);
    UPoly u;
    for (auto& c : cs) u.push_back(RatFunc(c));
    while (!u.empty() && u.back().is_zero()) u.pop_back();
    return u;
}

RatFunc from_upoly(const UPoly& u) {
    RatFunc r;
    RatFunc x = RatFunc::x();
    for (std::size_t k = u.size(); k-- > 0;) r = r * x + u[k];
    return r;
}

void trim(UPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// a = q d + r
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& d) {
    trim(a);
    UPoly q(a.size() >= d.size() ? a.size() - d.size() + 1 : 0);
    RatFunc inv = d.back().inverse();
    while (a.size() >= d.size()) {
        std::size_t s = a.size() - d.size();
        RatFunc f = a.back() * inv;
        q[s] = f;
        for (std::size_t k = 0; k < d.size(); ++k) a[k + s] -= f * d[k];
        a.pop_back();
        trim(a);
    }
    return {q, a};
}

Poly x_primitive(const Poly& p) {
    Poly c = gcd_content(p, kVarX);
    return c.is_zero() ? p : *p.exact_div(c);
}

}  // namespace

std::optional<RatFunc> rational_antiderivative(const RatFunc& f) {
    if (f.is_zero()) return RatFunc();
    for (auto* p : {&f.num(), &f.den()})
        for (Var v : p->vars())
            if (is_shift_var(v)) throw UndecidableResidue("integrand involves functions of x: " + f.str());
    if (!f.den().has_var(kVarX)) {
        UPoly a = to_upoly(f.num());
        UPoly r(a.size() + 1);
        for (std::size_t k = 0; k < a.size(); ++k) r[k + 1] = a[k] * RatFunc(Rat(1, static_cast<long>(k + 1)));
        return from_upoly(r) / RatFunc(f.den());
    }
    Poly D = x_primitive(f.den());
    RatFunc scale = RatFunc(D) / RatFunc(f.den());  // x free
    UPoly A = to_upoly(f.num());
    for (auto& c : A) c *= scale;
    auto [qp, a1] = divmod(A, to_upoly(D));
    UPoly ip(qp.size() + 1);
    for (std::size_t k = 0; k < qp.size(); ++k) ip[k + 1] = qp[k] * RatFunc(Rat(1, static_cast<long>(k + 1)));
    RatFunc poly_part = from_upoly(ip);
    if (a1.empty()) return poly_part;

    Poly dm = x_primitive(gcd(D, D.diff(kVarX)));
    Poly ds = *D.exact_div(dm);
    Poly H = *(ds * dm.diff(kVarX)).exact_div(dm);
    unsigned m = dm.degree(kVarX), s = ds.degree(kVarX), n = m + s;
    // unknowns: B_0..B_{m-1}, C_0..C_{s-1}; a1 = B' ds - B H + C dm
    std::vector<SparseRow> rows(n);
    UPoly uds = to_upoly(ds), uH = to_upoly(H), udm = to_upoly(dm);
    auto put = [&](std::size_t e, std::size_t col, const RatFunc& v) {
        if (e < n && !v.is_zero()) rows[e][col] += v;
    };
    for (unsigned k = 0; k < m; ++k) {
        if (k > 0)
            for (std::size_t t = 0; t < uds.size(); ++t) put(k - 1 + t, k, RatFunc(static_cast<long>(k)) * uds[t]);
        for (std::size_t t = 0; t < uH.size(); ++t) put(k + t, k, -uH[t]);
    }
    for (unsigned k = 0; k < s; ++k)
        for (std::size_t t = 0; t < udm.size(); ++t) put(k + t, m + k, udm[t]);
    std::vector<RatFunc> rhs(n);
    for (std::size_t e = 0; e < a1.size() && e < n; ++e) rhs[e] = a1[e];
    LinearSolution sol = solve_linear(rows, rhs, n);
    bool param_den = f.den().has_var_if(is_param_var);
    if (!sol.consistent) throw UndecidableResidue("Hermite system inconsistent");
    bool log_part = false;
    for (unsigned k = 0; k < s; ++k)
        if (!sol.particular[m + k].is_zero()) log_part = true;
    if (log_part) {
        if (param_den || sol.parametric_pivot)
            throw UndecidableResidue("logarithmic part of " + f.str() + " depends on parameter values");
        return std::nullopt;
    }
    UPoly B(sol.particular.begin(), sol.particular.begin() + m);
    RatFunc g = poly_part + from_upoly(B) / RatFunc(dm);
    if (g.derivative() != f) throw UndecidableResidue("antiderivative check failed for " + f.str());
    return g;
}

// -------------------------------------------------------------- ansatz solve

namespace {

Poly lcm(const Poly& a, const Poly& b) {
    Poly g = gcd(a, b);
    return *(a * b).exact_div(g);
}

bool is_c_times_d(const MatFieldOp& m) {
    if (m.rows() != 1 || m.cols() != 1) return false;
    const FieldOp& p = m.at(0, 0);
    return p.order() == 1 && p.coeffs().size() == 1;
}

}  // namespace

RationalSolution solve_rational(const MatFieldOp& m, const std::vector<RatFunc>& b, int degree_bound) {
    if (b.size() != m.rows()) throw ShapeMismatch("right-hand side length does not match operator");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (auto& [n, c] : m.at(i, j).coeffs())
                if (c.has_jets()) throw NotQuasiconstant("solve_rational needs quasiconstant coefficients");
    std::optional<int> kdim;
    if (m.square() && !m.is_zero()) kdim = kernel_dim_bound(m);
    RationalSolution out;
    if (degree_bound < 0) degree_bound = 2 * (kdim ? *kdim : std::max(m.order(), 0)) + 4;
    out.degree_bound = degree_bound;
    bool homogeneous = std::all_of(b.begin(), b.end(), [](const RatFunc& r) { return r.is_zero(); });

    if (is_c_times_d(m)) {
        RatFunc c = m.at(0, 0).lead();
        out.basis.push_back({RatFunc(1)});
        out.complete = true;
        if (homogeneous) {
            out.particular = {RatFunc()};
            return out;
        }
        auto g = rational_antiderivative(b[0] / c);
        if (!g) throw NoRationalSolution("d u = " + (b[0] / c).str() + " has a logarithmic part");
        out.particular = {*g};
        return out;
    }

    Poly Q(1);
    for (auto& r : b) Q = lcm(Q, r.den());
    std::size_t nu = m.cols(), per = static_cast<std::size_t>(degree_bound) + 1;
    unsigned top = static_cast<unsigned>(std::max(m.order(), 0));
    // ders[d][n] = d^n (x^d / Q)
    std::vector<std::vector<RatFunc>> ders(per);
    for (std::size_t d = 0; d < per; ++d) {
        ders[d].push_back(RatFunc(Poly::var(kVarX, static_cast<unsigned>(d)), Q));
        for (unsigned n = 1; n <= top; ++n) ders[d].push_back(ders[d].back().derivative());
    }
    std::vector<SparseRow> rows;
    std::vector<RatFunc> rhs;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::map<std::size_t, RatFunc> T;
        for (std::size_t q = 0; q < nu; ++q) {
            const FieldOp& op = m.at(r, q);
            if (op.is_zero()) continue;
            for (std::size_t d = 0; d < per; ++d) {
                RatFunc t;
                for (auto& [n, c] : op.coeffs()) t += c * ders[d][n];
                if (!t.is_zero()) T.emplace(q * per + d, t);
            }
        }
        Poly L = b[r].den();
        for (auto& [k, t] : T) L = lcm(L, t.den());
        std::map<unsigned, SparseRow> eq;
        std::map<unsigned, RatFunc> eb;
        for (auto& [k, t] : T) {
            Poly num = *(t.num() * L).exact_div(t.den());
            auto cs = num.coeffs_in(kVarX);
            for (unsigned e = 0; e < cs.size(); ++e)
                if (!cs[e].is_zero()) eq[e][k] = RatFunc(cs[e]);
        }
        if (!b[r].is_zero()) {
            Poly num = *(b[r].num() * L).exact_div(b[r].den());
            auto cs = num.coeffs_in(kVarX);
            for (unsigned e = 0; e < cs.size(); ++e)
                if (!cs[e].is_zero()) eb[e] = RatFunc(cs[e]);
        }
        for (auto& [e, row] : eq) {
            rows.push_back(row);
            auto it = eb.find(e);
            rhs.push_back(it == eb.end() ? RatFunc() : it->second);
            if (it != eb.end()) eb.erase(it);
        }
        for (auto& [e, v] : eb) {
            rows.push_back({});
            rhs.push_back(v);
        }
    }
    LinearSolution sol = solve_linear(rows, rhs, nu * per);
    auto assemble = [&](const std::vector<RatFunc>& cvec) {
        std::vector<RatFunc> u(nu);
        for (std::size_t q = 0; q < nu; ++q)
            for (std::size_t d = 0; d < per; ++d)
                if (!cvec[q * per + d].is_zero()) u[q] += cvec[q * per + d] * ders[d][0];
        return u;
    };
    if (!sol.consistent) throw Incomplete("no rational solution with numerator degree <= " + std::to_string(degree_bound));
    out.particular = assemble(sol.particular);
    for (auto& v : sol.nullspace) out.basis.push_back(assemble(v));
    out.complete = kdim && static_cast<int>(out.basis.size()) == *kdim;
    return out;
}

LinearDiffSystem linearize(const std::vector<DiffPoly>& eqs, unsigned unknowns) {
    LinearDiffSystem s{MatFieldOp(eqs.size(), unknowns), std::vector<RatFunc>(eqs.size())};
    for (std::size_t r = 0; r < eqs.size(); ++r) {
        for (JetVar v : eqs[r].jets()) {
            if (v.i < 1 || v.i > unknowns) throw ArityError("unknown index out of range");
            DiffPoly c = eqs[r].partial(v);
            if (!c.is_quasiconstant()) throw NotQuasiconstant("equation is not linear in the unknowns");
            s.m.at(r, v.i - 1).add_term(v.n, c.quasiconstant_part());
        }
        s.b[r] = -eqs[r].quasiconstant_part();
    }
    return s;
}

}  // namespace vp
