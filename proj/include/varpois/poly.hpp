#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vp {

using Rat = mpq_class;
using Var = std::uint32_t;

// Variable codes: x, declared parameters, jet variables u_i^(n) and
// derivatives of generic function symbols f_k^(n).
constexpr Var kVarX = 0;
constexpr Var kParamBase = 1;
constexpr Var kJetBase = 1u << 20;
constexpr Var kFuncBase = 1u << 28;
constexpr unsigned kIndexSpan = 1024;

inline Var param_var(unsigned k) { return kParamBase + k; }
inline Var jet_var(unsigned i, unsigned n) { return kJetBase + n * kIndexSpan + i; }
inline Var func_var(unsigned k, unsigned n) { return kFuncBase + n * kIndexSpan + k; }

inline bool is_param_var(Var v) { return v >= kParamBase && v < kJetBase; }
inline bool is_jet_var(Var v) { return v >= kJetBase && v < kFuncBase; }
inline bool is_func_var(Var v) { return v >= kFuncBase; }
inline bool is_shift_var(Var v) { return v >= kJetBase; }
inline unsigned var_index(Var v) { return (v >= kFuncBase ? v - kFuncBase : v - kJetBase) % kIndexSpan; }
inline unsigned var_order(Var v) { return (v >= kFuncBase ? v - kFuncBase : v - kJetBase) / kIndexSpan; }
inline Var shifted(Var v) { return v + kIndexSpan; }

struct Monomial {
    std::vector<std::pair<Var, unsigned>> f;  // sorted by Var, positive exponents

    unsigned degree() const;
    unsigned degree_in(Var v) const;
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // requires divides
    Monomial without(Var v) const;
    bool operator==(const Monomial& o) const { return f == o.f; }
    bool operator!=(const Monomial& o) const { return f != o.f; }
};

// graded lex, larger variable codes dominate
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
public:
    using Terms = std::map<Monomial, Rat, MonoLess>;

    Poly() = default;
    Poly(long c);
    Poly(const Rat& c);
    static Poly var(Var v, unsigned e = 1);
    static Poly monomial(const Monomial& m, const Rat& c);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Rat constant_term() const;
    const Terms& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rat& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    void add_term(const Monomial& m, const Rat& c);
    Poly pow(unsigned e) const;

    std::set<Var> vars() const;
    bool has_var(Var v) const;
    bool has_var_if(bool (*pred)(Var)) const;
    unsigned degree(Var v) const;
    const Monomial& lead_monomial() const { return t_.rbegin()->first; }
    const Rat& lead_coeff() const { return t_.rbegin()->second; }

    Poly diff(Var v) const;
    Poly total_derivative() const;
    std::vector<Poly> coeffs_in(Var v) const;
    static Poly from_coeffs(Var v, const std::vector<Poly>& cs);
    Poly subs(Var v, const Poly& p) const;
    Poly at_zero(Var v) const { return coeffs_in_zero(v); }
    Poly monic() const;
    Rat content() const;
    std::optional<Poly> exact_div(const Poly& d) const;

    std::string str() const;

private:
    Poly coeffs_in_zero(Var v) const;
    Terms t_;
};

Poly gcd(const Poly& a, const Poly& b);
Poly gcd_content(const Poly& a, Var v);

std::string var_name(Var v);

}  // namespace vp
