#pragma once

#include <string>

#include "varpois/poly.hpp"

namespace vp {

// Quotient of polynomials over Q in x, parameters, jets and function symbols,
// kept in lowest terms with a monic denominator.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(long c) : num_(c) {}
    RatFunc(const Rat& c) : num_(c) {}
    RatFunc(Poly p) : num_(std::move(p)) {}
    RatFunc(Poly num, Poly den);

    static RatFunc x() { return RatFunc(Poly::var(kVarX)); }
    static RatFunc var(Var v) { return RatFunc(Poly::var(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    std::size_t size() const { return den_.is_one() ? num_.size() : 2; }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_rational() const { return den_.is_one() && num_.is_constant(); }
    bool is_polynomial() const { return den_.is_one(); }
    Rat rational_value() const { return num_.constant_term(); }
    bool has_jets() const;
    bool is_constant() const;  // derivative vanishes: free of x, jets and functions
    bool has_var(Var v) const { return num_.has_var(v) || den_.has_var(v); }

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(int e) const;
    RatFunc derivative() const;
    RatFunc diff(Var v) const;
    RatFunc subs(Var v, const RatFunc& r) const;

    std::string str() const;

private:
    RatFunc(Poly num, Poly den, bool) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    Poly num_;
    Poly den_{1};
};

// Element of the quasiconstant field F.
using FieldElem = RatFunc;

}  // namespace vp
