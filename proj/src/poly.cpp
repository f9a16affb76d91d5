#include "varpois/poly.hpp"

#include <algorithm>
#include <sstream>

#include "varpois/symbols.hpp"

namespace vp {

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (auto& [v, e] : f) d += e;
    return d;
}

unsigned Monomial::degree_in(Var v) const {
    for (auto& [w, e] : f)
        if (w == v) return e;
    return 0;
}

bool Monomial::divides(const Monomial& o) const {
    std::size_t j = 0;
    for (auto& [v, e] : f) {
        while (j < o.f.size() && o.f[j].first < v) ++j;
        if (j == o.f.size() || o.f[j].first != v || o.f[j].second < e) return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.f.reserve(f.size() + o.f.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < o.f.size()) {
        if (j == o.f.size() || (i < f.size() && f[i].first < o.f[j].first)) {
            r.f.push_back(f[i++]);
        } else if (i == f.size() || o.f[j].first < f[i].first) {
            r.f.push_back(o.f[j++]);
        } else {
            r.f.emplace_back(f[i].first, f[i].second + o.f[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    std::size_t j = 0;
    for (auto& [v, e] : f) {
        unsigned s = 0;
        if (j < o.f.size() && o.f[j].first == v) s = o.f[j++].second;
        if (e > s) r.f.emplace_back(v, e - s);
    }
    return r;
}

Monomial Monomial::without(Var v) const {
    Monomial r;
    for (auto& p : f)
        if (p.first != v) r.f.push_back(p);
    return r;
}

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::size_t i = a.f.size(), j = b.f.size();
    while (i > 0 && j > 0) {
        auto& x = a.f[i - 1];
        auto& y = b.f[j - 1];
        if (x.first != y.first) return x.first < y.first;
        if (x.second != y.second) return x.second < y.second;
        --i;
        --j;
    }
    return i < j;
}

Poly::Poly(long c) {
    if (c != 0) t_.emplace(Monomial{}, Rat(c));
}

Poly::Poly(const Rat& c) {
    if (c != 0) t_.emplace(Monomial{}, c);
}

Poly Poly::var(Var v, unsigned e) {
    Poly p;
    Monomial m;
    if (e > 0) m.f.emplace_back(v, e);
    p.t_.emplace(std::move(m), Rat(1));
    return p;
}

Poly Poly::monomial(const Monomial& m, const Rat& c) {
    Poly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.f.empty()); }

bool Poly::is_one() const { return t_.size() == 1 && t_.begin()->first.f.empty() && t_.begin()->second == 1; }

Rat Poly::constant_term() const {
    auto it = t_.find(Monomial{});
    return it == t_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, ins] = t_.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rat& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, k] : t_) k *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.is_constant()) return b * a.constant_term();
    if (b.is_constant()) return a * b.constant_term();
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::set<Var> Poly::vars() const {
    std::set<Var> s;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m.f) s.insert(v);
    return s;
}

bool Poly::has_var(Var v) const {
    for (auto& [m, c] : t_)
        if (m.degree_in(v)) return true;
    return false;
}

bool Poly::has_var_if(bool (*pred)(Var)) const {
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m.f)
            if (pred(v)) return true;
    return false;
}

unsigned Poly::degree(Var v) const {
    unsigned d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree_in(v));
    return d;
}

Poly Poly::diff(Var v) const {
    Poly r;
    for (auto& [m, c] : t_) {
        unsigned e = m.degree_in(v);
        if (!e) continue;
        Monomial n;
        for (auto& p : m.f) {
            if (p.first != v)
                n.f.push_back(p);
            else if (e > 1)
                n.f.emplace_back(v, e - 1);
        }
        r.add_term(n, c * e);
    }
    return r;
}

Poly Poly::total_derivative() const {
    Poly r;
    for (auto& [m, c] : t_) {
        for (std::size_t k = 0; k < m.f.size(); ++k) {
            Var v = m.f[k].first;
            unsigned e = m.f[k].second;
            if (is_param_var(v)) continue;
            Monomial n = m;
            if (e > 1)
                n.f[k].second = e - 1;
            else
                n.f.erase(n.f.begin() + static_cast<long>(k));
            if (v == kVarX) {
                r.add_term(n, c * e);
            } else {
                Monomial s;
                s.f.emplace_back(shifted(v), 1);
                r.add_term(n * s, c * e);
            }
        }
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
    std::vector<Poly> cs(degree(v) + 1);
    for (auto& [m, c] : t_) cs[m.degree_in(v)].add_term(m.without(v), c);
    return cs;
}

Poly Poly::coeffs_in_zero(Var v) const {
    Poly r;
    for (auto& [m, c] : t_)
        if (!m.degree_in(v)) r.add_term(m, c);
    return r;
}

Poly Poly::from_coeffs(Var v, const std::vector<Poly>& cs) {
    Poly r;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        Monomial xv;
        if (k) xv.f.emplace_back(v, static_cast<unsigned>(k));
        for (auto& [m, c] : cs[k].t_) r.add_term(m * xv, c);
    }
    return r;
}

Poly Poly::subs(Var v, const Poly& p) const {
    auto cs = coeffs_in(v);
    Poly r;
    for (std::size_t k = cs.size(); k-- > 0;) r = r * p + cs[k];
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Rat lc = lead_coeff();
    if (lc == 1) return *this;
    Poly r = *this;
    r *= Rat(1) / lc;
    return r;
}

Rat Poly::content() const {
    mpz_class n = 0, d = 1;
    for (auto& [m, c] : t_) {
        mpz_gcd(n.get_mpz_t(), n.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    }
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::optional<Poly> Poly::exact_div(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (d.is_constant()) return *this * (Rat(1) / d.constant_term());
    Poly r = *this, q;
    const Monomial& ld = d.lead_monomial();
    const Rat& lc = d.lead_coeff();
    while (!r.is_zero()) {
        const Monomial& lm = r.lead_monomial();
        if (!ld.divides(lm)) return std::nullopt;
        Monomial t = lm / ld;
        Rat c = r.lead_coeff() / lc;
        q.add_term(t, c);
        for (auto& [m, k] : d.t_) r.add_term(m * t, -c * k);
    }
    return q;
}

namespace {

Poly pseudo_rem(const Poly& a, const Poly& b, Var v) {
    auto as = a.coeffs_in(v);
    auto bs = b.coeffs_in(v);
    std::size_t db = bs.size() - 1;
    const Poly lb = bs[db];
    auto trim = [&] {
        while (!as.empty() && as.back().is_zero()) as.pop_back();
    };
    trim();
    while (!as.empty() && as.size() - 1 >= db) {
        std::size_t da = as.size() - 1;
        Poly la = as[da];
        std::size_t shift = da - db;
        for (auto& c : as) c = c * lb;
        for (std::size_t k = 0; k <= db; ++k) as[k + shift] -= la * bs[k];
        as[da] = Poly();
        trim();
    }
    return Poly::from_coeffs(v, as);
}

Poly primitive_part(const Poly& p, Var v) {
    Poly c = gcd_content(p, v);
    return *p.exact_div(c);
}

}  // namespace

Poly gcd_content(const Poly& a, Var v) {
    auto cs = a.coeffs_in(v);
    Poly g;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return a.monic();
    Var v = 0;
    for (Var w : a.vars()) v = std::max(v, w);
    for (Var w : b.vars()) v = std::max(v, w);
    bool ina = a.has_var(v), inb = b.has_var(v);
    if (!ina) return gcd(a, gcd_content(b, v));
    if (!inb) return gcd(gcd_content(a, v), b);
    Poly ca = gcd_content(a, v), cb = gcd_content(b, v);
    Poly pa = *a.exact_div(ca), pb = *b.exact_div(cb);
    Poly g = gcd(ca, cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    bool univariate = pa.vars().size() == 1 && pb.vars().size() == 1;
    if (univariate) {
        pa = pa.monic();
        pb = pb.monic();
    }
    while (true) {
        Poly r = pseudo_rem(pa, pb, v);
        if (r.is_zero()) break;
        if (!r.has_var(v)) {
            pb = Poly(1);
            break;
        }
        pa = pb;
        pb = univariate ? r.monic() : primitive_part(r, v);
    }
    return (g * pb).monic();
}

std::string var_name(Var v) {
    if (v == kVarX) return "x";
    if (is_param_var(v)) return param_name(v - kParamBase);
    if (is_jet_var(v)) return jet_name(var_index(v), var_order(v));
    return primed(func_name(var_index(v)), var_order(v));
}

namespace {

std::string mono_str(const Monomial& m) {
    std::string s;
    // print jets before x and parameters in descending variable order
    for (std::size_t k = m.f.size(); k-- > 0;) {
        if (!s.empty()) s += "*";
        s += var_name(m.f[k].first);
        if (m.f[k].second > 1) s += "^" + std::to_string(m.f[k].second);
    }
    return s;
}

}  // namespace

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Rat& c = it->second;
        std::string ms = mono_str(it->first);
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (ms.empty()) {
            os << a.get_str();
        } else if (a == 1) {
            os << ms;
        } else {
            os << a.get_str() << "*" << ms;
        }
        first = false;
    }
    return os.str();
}

}  // namespace vp
