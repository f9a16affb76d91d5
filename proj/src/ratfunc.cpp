#include "varpois/ratfunc.hpp"

#include <stdexcept>

namespace vp {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("division by zero");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.is_constant()) {
        num_ *= Rat(1) / den_.constant_term();
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = *num_.exact_div(g);
        den_ = *den_.exact_div(g);
    }
    Rat lc = den_.lead_coeff();
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
    if (den_.is_one()) den_ = Poly(1);
}

bool RatFunc::has_jets() const { return num_.has_var_if(is_jet_var) || den_.has_var_if(is_jet_var); }

bool RatFunc::is_constant() const {
    auto moving = [](Var v) { return !is_param_var(v); };
    for (auto& p : {&num_, &den_})
        for (auto& [m, c] : p->terms())
            for (auto& [v, e] : m.f)
                if (moving(v)) return false;
    return true;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) return *this = RatFunc();
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    if (o.is_rational()) {
        num_ *= o.rational_value();
        return *this;
    }
    if (is_rational()) {
        Rat c = rational_value();
        *this = o;
        num_ *= c;
        return *this;
    }
    Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Poly n = *num_.exact_div(g1) * *o.num_.exact_div(g2);
    Poly d = *den_.exact_div(g2) * *o.den_.exact_div(g1);
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r(1), b = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1) r *= b;
        u >>= 1;
        if (u) b *= b;
    }
    return r;
}

RatFunc RatFunc::derivative() const {
    if (den_.is_one()) return RatFunc(num_.total_derivative());
    Poly n = num_.total_derivative() * den_ - num_ * den_.total_derivative();
    return RatFunc(n, den_ * den_);
}

RatFunc RatFunc::diff(Var v) const {
    if (den_.is_one()) return RatFunc(num_.diff(v));
    Poly n = num_.diff(v) * den_ - num_ * den_.diff(v);
    return RatFunc(n, den_ * den_);
}

RatFunc RatFunc::subs(Var v, const RatFunc& r) const {
    auto eval = [&](const Poly& p) {
        auto cs = p.coeffs_in(v);
        RatFunc acc;
        for (std::size_t k = cs.size(); k-- > 0;) acc = acc * r + RatFunc(cs[k]);
        return acc;
    };
    if (!has_var(v)) return *this;
    return eval(num_) / eval(den_);
}

std::string RatFunc::str() const {
    if (den_.is_one()) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace vp
