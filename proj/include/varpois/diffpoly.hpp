#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "varpois/ratfunc.hpp"

namespace vp {

struct JetVar {
    unsigned i = 1;  // component, 1-based
    unsigned n = 0;  // derivative order

    bool operator==(const JetVar& o) const { return i == o.i && n == o.n; }
    bool operator!=(const JetVar& o) const { return !(*this == o); }
    bool operator<(const JetVar& o) const { return n != o.n ? n < o.n : i < o.i; }
    Var code() const { return jet_var(i, n); }
};

struct JetMono {
    std::vector<std::pair<JetVar, unsigned>> f;  // ascending JetVar

    unsigned degree() const;
    unsigned degree_in(JetVar v) const;
    JetMono operator*(const JetMono& o) const;
    bool operator==(const JetMono& o) const { return f == o.f; }
};

// degrevlex with jets ordered by (n, i)
struct JetLess {
    bool operator()(const JetMono& a, const JetMono& b) const;
};

class DiffPoly {
public:
    using Terms = std::map<JetMono, FieldElem, JetLess>;

    DiffPoly() = default;
    DiffPoly(long c) : DiffPoly(FieldElem(c)) {}
    DiffPoly(const Rat& c) : DiffPoly(FieldElem(c)) {}
    DiffPoly(const FieldElem& c);
    static DiffPoly jet(unsigned i, unsigned n = 0);
    static DiffPoly term(const JetMono& m, const FieldElem& c);
    static DiffPoly from_ratfunc(const RatFunc& r);  // denominator must be jet free

    bool is_zero() const { return t_.empty(); }
    bool is_quasiconstant() const;
    FieldElem quasiconstant_part() const;  // evaluation at u = 0
    const Terms& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }

    void add_term(const JetMono& m, const FieldElem& c);
    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const FieldElem& c);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const FieldElem& c) { return a *= c; }
    friend DiffPoly operator*(const FieldElem& c, DiffPoly a) { return a *= c; }
    bool operator==(const DiffPoly& o) const { return t_ == o.t_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }
    DiffPoly pow(unsigned e) const;

    DiffPoly derivative() const;  // total derivative
    DiffPoly derivative(unsigned times) const;
    DiffPoly partial(unsigned i, unsigned n) const;
    DiffPoly partial(JetVar v) const { return partial(v.i, v.n); }
    DiffPoly map_coeffs(const std::function<FieldElem(const FieldElem&)>& fn) const;

    std::vector<JetVar> jets() const;   // ascending
    unsigned max_index() const;         // 0 when quasiconstant
    int max_order(unsigned i) const;    // -1 when u_i absent
    unsigned degree_in(JetVar v) const;
    unsigned degree() const;            // total jet degree

    // homogeneous components by total jet degree
    std::map<unsigned, DiffPoly> homogeneous_parts() const;

    RatFunc to_ratfunc() const;
    std::string str() const;

private:
    Terms t_;
};

std::string to_string(const DiffPoly& p);

}  // namespace vp
