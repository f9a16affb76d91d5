#include "varpois/lpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace vp {

LPoly LPoly::constant(unsigned nv, const DiffPoly& c) {
    LPoly p(nv);
    p.add_term(Exps(nv, 0), c);
    return p;
}

LPoly LPoly::var(unsigned nv, unsigned k, unsigned e) {
    LPoly p(nv);
    Exps x(nv, 0);
    x[k] = e;
    p.add_term(x, DiffPoly(1));
    return p;
}

void LPoly::add_term(const Exps& e, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.emplace(e, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

DiffPoly LPoly::coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? DiffPoly() : it->second;
}

LPoly LPoly::operator-() const {
    LPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

LPoly& LPoly::operator+=(const LPoly& o) {
    if (o.nv_ != nv_ && !o.is_zero()) {
        if (is_zero())
            nv_ = o.nv_;
        else
            throw std::invalid_argument("lambda arity mismatch");
    }
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) { return *this += -o; }

LPoly& LPoly::operator*=(const DiffPoly& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    Terms n;
    for (auto& [e, k] : t_) {
        DiffPoly p = k * c;
        if (!p.is_zero()) n.emplace(e, std::move(p));
    }
    t_ = std::move(n);
    return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
    if (a.nv_ != b.nv_) throw std::invalid_argument("lambda arity mismatch");
    LPoly r(a.nv_);
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) {
            Exps e(a.nv_);
            for (unsigned k = 0; k < a.nv_; ++k) e[k] = ea[k] + eb[k];
            r.add_term(e, ca * cb);
        }
    return r;
}

LPoly LPoly::mul_var(unsigned k, unsigned e) const {
    if (e == 0) return *this;
    LPoly r(nv_);
    for (auto& [x, c] : t_) {
        Exps y = x;
        y[k] += e;
        r.t_.emplace(std::move(y), c);
    }
    return r;
}

LPoly LPoly::coeff_derivative() const {
    LPoly r(nv_);
    for (auto& [e, c] : t_) r.add_term(e, c.derivative());
    return r;
}

LPoly LPoly::map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& fn) const {
    LPoly r(nv_);
    for (auto& [e, c] : t_) r.add_term(e, fn(c));
    return r;
}

unsigned LPoly::degree_in(unsigned k) const {
    unsigned d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e[k]);
    return d;
}

unsigned LPoly::max_degree() const {
    unsigned d = 0;
    for (unsigned k = 0; k < nv_; ++k) d = std::max(d, degree_in(k));
    return d;
}

LPoly LPoly::apply_power(const LinForm& f, unsigned n) const {
    if (f.c.size() != nv_) throw std::invalid_argument("linear form arity mismatch");
    LPoly r = *this;
    for (unsigned s = 0; s < n && !r.is_zero(); ++s) {
        LPoly next(nv_);
        for (unsigned k = 0; k < nv_; ++k) {
            if (f.c[k] == 0) continue;
            LPoly t = r.mul_var(k);
            if (f.c[k] != 1) t *= DiffPoly(f.c[k]);
            next += t;
        }
        if (f.d != 0) {
            LPoly t = r.coeff_derivative();
            if (f.d != 1) t *= DiffPoly(f.d);
            next += t;
        }
        r = std::move(next);
    }
    return r;
}

LPoly LPoly::substitute(unsigned nv_target, const std::vector<LinForm>& forms) const {
    if (forms.size() != nv_) throw std::invalid_argument("substitution arity mismatch");
    LPoly r(nv_target);
    for (auto& [e, c] : t_) {
        LPoly q = LPoly::constant(nv_target, c);
        for (unsigned k = 0; k < nv_; ++k)
            if (e[k]) q = q.apply_power(forms[k], e[k]);
        r += q;
    }
    return r;
}

LPoly LPoly::act_on(const std::vector<LinForm>& forms, const LPoly& x) const {
    if (forms.size() != nv_) throw std::invalid_argument("substitution arity mismatch");
    LPoly r(x.nvars());
    for (auto& [e, c] : t_) {
        LPoly q = x;
        for (unsigned k = 0; k < nv_; ++k)
            if (e[k]) q = q.apply_power(forms[k], e[k]);
        r += c * q;
    }
    return r;
}

std::vector<std::string> default_lambda_names(unsigned nv) {
    if (nv == 1) return {"lambda"};
    if (nv == 2) return {"lambda", "mu"};
    std::vector<std::string> v;
    for (unsigned k = 0; k < nv; ++k) v.push_back("lambda" + std::to_string(k + 1));
    return v;
}

std::string LPoly::str(const std::vector<std::string>& names_in) const {
    if (t_.empty()) return "0";
    auto names = names_in.empty() ? default_lambda_names(nv_) : names_in;
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        std::string lam;
        for (unsigned k = 0; k < nv_; ++k) {
            if (!it->first[k]) continue;
            if (!lam.empty()) lam += "*";
            lam += names[k];
            if (it->first[k] > 1) lam += "^" + std::to_string(it->first[k]);
        }
        std::string cs = it->second.str();
        std::string body = cs[0] == '-' ? cs.substr(1) : cs;
        bool multi = body.find(" + ") != std::string::npos || body.find(" - ") != std::string::npos;
        bool neg = !multi && body.size() < cs.size();
        if (neg)
            cs = body;
        else if (multi && (!lam.empty() || !first))
            cs = "(" + cs + ")";
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        if (lam.empty())
            os << cs;
        else if (cs == "1")
            os << lam;
        else
            os << cs << "*" << lam;
        first = false;
    }
    return os.str();
}

}  // namespace vp
