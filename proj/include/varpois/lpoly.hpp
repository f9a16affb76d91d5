#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "varpois/diffpoly.hpp"

namespace vp {

using Exps = std::vector<unsigned>;

// A linear form c_0*lambda_0 + ... + c_{n-1}*lambda_{n-1} + d*(partial),
// where partial acts on whatever coefficient the form is applied to.
struct LinForm {
    std::vector<long> c;
    long d = 0;

    static LinForm var(unsigned nv, unsigned k) {
        LinForm f{std::vector<long>(nv, 0), 0};
        f.c[k] = 1;
        return f;
    }
    static LinForm sum(unsigned nv, const std::vector<unsigned>& ks, long dcoef) {
        LinForm f{std::vector<long>(nv, 0), dcoef};
        for (unsigned k : ks) f.c[k] += 1;
        return f;
    }
    LinForm negated() const {
        LinForm f = *this;
        for (auto& x : f.c) x = -x;
        f.d = -f.d;
        return f;
    }
};

// Polynomial in lambda_0..lambda_{n-1} with differential-polynomial
// coefficients written to the right of the lambda powers.
class LPoly {
public:
    using Terms = std::map<Exps, DiffPoly>;

    explicit LPoly(unsigned nv = 0) : nv_(nv) {}
    static LPoly constant(unsigned nv, const DiffPoly& c);
    static LPoly var(unsigned nv, unsigned k, unsigned e = 1);

    unsigned nvars() const { return nv_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add_term(const Exps& e, const DiffPoly& c);
    DiffPoly coeff(const Exps& e) const;

    LPoly operator-() const;
    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    LPoly& operator*=(const DiffPoly& c);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(LPoly a, const DiffPoly& c) { return a *= c; }
    friend LPoly operator*(const DiffPoly& c, LPoly a) { return a *= c; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);
    bool operator==(const LPoly& o) const { return nv_ == o.nv_ && t_ == o.t_; }
    bool operator!=(const LPoly& o) const { return !(*this == o); }

    LPoly mul_var(unsigned k, unsigned e = 1) const;
    LPoly coeff_derivative() const;  // partial applied to coefficients only
    LPoly map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& fn) const;
    unsigned degree_in(unsigned k) const;
    unsigned max_degree() const;

    // (form)^n applied to this polynomial; partial in the form hits the coefficients
    LPoly apply_power(const LinForm& f, unsigned n) const;

    // Re-express in nv_target variables: variable k goes to the linear form
    // forms[k] (over the target variables), with partial acting leftward on the
    // coefficients of this polynomial.
    LPoly substitute(unsigned nv_target, const std::vector<LinForm>& forms) const;

    // P(forms)_-> X: variables of this polynomial replaced by linear forms whose
    // partial acts on X; coefficients of this polynomial multiply from the left.
    LPoly act_on(const std::vector<LinForm>& forms, const LPoly& x) const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    unsigned nv_;
    Terms t_;
};

std::vector<std::string> default_lambda_names(unsigned nv);

}  // namespace vp
