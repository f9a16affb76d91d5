#include "varpois/diffpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "varpois/symbols.hpp"

namespace vp {

unsigned JetMono::degree() const {
    unsigned d = 0;
    for (auto& [v, e] : f) d += e;
    return d;
}

unsigned JetMono::degree_in(JetVar v) const {
    for (auto& [w, e] : f)
        if (w == v) return e;
    return 0;
}

JetMono JetMono::operator*(const JetMono& o) const {
    JetMono r;
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

bool JetLess::operator()(const JetMono& a, const JetMono& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::size_t i = 0, j = 0;
    while (i < a.f.size() && j < b.f.size()) {
        if (a.f[i].first != b.f[j].first) return a.f[i].first < b.f[j].first;
        if (a.f[i].second != b.f[j].second) return a.f[i].second > b.f[j].second;
        ++i;
        ++j;
    }
    return false;
}

DiffPoly::DiffPoly(const FieldElem& c) {
    if (c.has_jets()) throw std::invalid_argument("coefficient depends on jet variables");
    if (!c.is_zero()) t_.emplace(JetMono{}, c);
}

DiffPoly DiffPoly::jet(unsigned i, unsigned n) {
    DiffPoly p;
    JetMono m;
    m.f.emplace_back(JetVar{i, n}, 1);
    p.t_.emplace(std::move(m), FieldElem(1));
    return p;
}

DiffPoly DiffPoly::term(const JetMono& m, const FieldElem& c) {
    DiffPoly p;
    p.add_term(m, c);
    return p;
}

DiffPoly DiffPoly::from_ratfunc(const RatFunc& r) {
    if (r.den().has_var_if(is_jet_var)) throw std::invalid_argument("not a differential polynomial: " + r.str());
    FieldElem inv = RatFunc(Poly(1), r.den());
    DiffPoly out;
    for (auto& [m, c] : r.num().terms()) {
        JetMono jm;
        Monomial rest;
        for (auto& [v, e] : m.f) {
            if (is_jet_var(v))
                jm.f.emplace_back(JetVar{var_index(v), var_order(v)}, e);
            else
                rest.f.emplace_back(v, e);
        }
        std::sort(jm.f.begin(), jm.f.end(), [](auto& a, auto& b) { return a.first < b.first; });
        out.add_term(jm, RatFunc(Poly::monomial(rest, c)) * inv);
    }
    return out;
}

bool DiffPoly::is_quasiconstant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.f.empty()); }

FieldElem DiffPoly::quasiconstant_part() const {
    auto it = t_.find(JetMono{});
    return it == t_.end() ? FieldElem() : it->second;
}

void DiffPoly::add_term(const JetMono& m, const FieldElem& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const FieldElem& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto it = t_.begin(); it != t_.end();) {
        it->second *= c;
        if (it->second.is_zero())
            it = t_.erase(it);
        else
            ++it;
    }
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
}

DiffPoly DiffPoly::pow(unsigned e) const {
    DiffPoly r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

DiffPoly DiffPoly::derivative() const {
    DiffPoly r;
    for (auto& [m, c] : t_) {
        FieldElem dc = c.derivative();
        if (!dc.is_zero()) r.add_term(m, dc);
        for (std::size_t k = 0; k < m.f.size(); ++k) {
            auto [v, e] = m.f[k];
            JetMono n = m;
            if (e > 1)
                n.f[k].second = e - 1;
            else
                n.f.erase(n.f.begin() + static_cast<long>(k));
            JetMono s;
            s.f.emplace_back(JetVar{v.i, v.n + 1}, 1);
            r.add_term(n * s, c * FieldElem(static_cast<long>(e)));
        }
    }
    return r;
}

DiffPoly DiffPoly::derivative(unsigned times) const {
    DiffPoly r = *this;
    for (unsigned k = 0; k < times && !r.is_zero(); ++k) r = r.derivative();
    return r;
}

DiffPoly DiffPoly::partial(unsigned i, unsigned n) const {
    JetVar v{i, n};
    DiffPoly r;
    for (auto& [m, c] : t_) {
        for (std::size_t k = 0; k < m.f.size(); ++k) {
            if (m.f[k].first != v) continue;
            unsigned e = m.f[k].second;
            JetMono q = m;
            if (e > 1)
                q.f[k].second = e - 1;
            else
                q.f.erase(q.f.begin() + static_cast<long>(k));
            r.add_term(q, c * FieldElem(static_cast<long>(e)));
        }
    }
    return r;
}

DiffPoly DiffPoly::map_coeffs(const std::function<FieldElem(const FieldElem&)>& fn) const {
    DiffPoly r;
    for (auto& [m, c] : t_) r.add_term(m, fn(c));
    return r;
}

std::vector<JetVar> DiffPoly::jets() const {
    std::vector<JetVar> v;
    for (auto& [m, c] : t_)
        for (auto& [j, e] : m.f) v.push_back(j);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

unsigned DiffPoly::max_index() const {
    unsigned r = 0;
    for (auto& [m, c] : t_)
        for (auto& [j, e] : m.f) r = std::max(r, j.i);
    return r;
}

int DiffPoly::max_order(unsigned i) const {
    int r = -1;
    for (auto& [m, c] : t_)
        for (auto& [j, e] : m.f)
            if (j.i == i) r = std::max(r, static_cast<int>(j.n));
    return r;
}

unsigned DiffPoly::degree_in(JetVar v) const {
    unsigned d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree_in(v));
    return d;
}

unsigned DiffPoly::degree() const {
    unsigned d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
}

std::map<unsigned, DiffPoly> DiffPoly::homogeneous_parts() const {
    std::map<unsigned, DiffPoly> r;
    for (auto& [m, c] : t_) r[m.degree()].add_term(m, c);
    return r;
}

RatFunc DiffPoly::to_ratfunc() const {
    RatFunc r;
    for (auto& [m, c] : t_) {
        Monomial pm;
        for (auto& [j, e] : m.f) pm.f.emplace_back(j.code(), e);
        std::sort(pm.f.begin(), pm.f.end());
        r += c * RatFunc(Poly::monomial(pm, Rat(1)));
    }
    return r;
}

std::string DiffPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const JetMono& m = it->first;
        const FieldElem& c = it->second;
        std::string ms;
        for (auto& [j, e] : m.f) {
            if (!ms.empty()) ms += "*";
            ms += jet_name(j.i, j.n);
            if (e > 1) ms += "^" + std::to_string(e);
        }
        bool neg = false;
        std::string cs;
        if (c.is_rational()) {
            Rat v = c.rational_value();
            neg = v < 0;
            Rat a = abs(v);
            if (!(a == 1 && !ms.empty())) cs = a.get_str();
        } else if (c.is_polynomial() && c.num().size() == 1 && c.num().lead_coeff() < 0) {
            neg = true;
            cs = (-c).str();
        } else {
            cs = c.str();
            bool simple = c.is_polynomial() && c.num().size() == 1;
            if (!simple && !ms.empty()) cs = "(" + cs + ")";
            if (!simple && ms.empty() && !first) cs = "(" + cs + ")";
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        os << cs;
        if (!cs.empty() && !ms.empty()) os << "*";
        os << ms;
        first = false;
    }
    return os.str();
}

std::string to_string(const DiffPoly& p) { return p.str(); }

}  // namespace vp
