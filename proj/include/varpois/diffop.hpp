#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "varpois/diffpoly.hpp"
#include "varpois/errors.hpp"

namespace vp {

Rat binom(long n, long k);  // n may be negative

// Sum of c_n d^n with coefficients on the left.
template <class R>
class ScalarOp {
public:
    using Coeffs = std::map<unsigned, R>;

    ScalarOp() = default;
    ScalarOp(const R& c) {
        if (!c.is_zero()) c_.emplace(0u, c);
    }
    ScalarOp(long c) : ScalarOp(R(c)) {}
    static ScalarOp d(unsigned n = 1) { return term(R(1), n); }
    static ScalarOp term(const R& c, unsigned n) {
        ScalarOp p;
        p.add_term(n, c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int order() const { return c_.empty() ? -1 : static_cast<int>(c_.rbegin()->first); }
    const Coeffs& coeffs() const { return c_; }
    R coeff(unsigned n) const {
        auto it = c_.find(n);
        return it == c_.end() ? R() : it->second;
    }
    R lead() const { return c_.empty() ? R() : c_.rbegin()->second; }

    void add_term(unsigned n, const R& c) {
        if (c.is_zero()) return;
        auto [it, ins] = c_.emplace(n, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    ScalarOp operator-() const {
        ScalarOp r;
        for (auto& [n, c] : c_) r.c_.emplace(n, -c);
        return r;
    }
    ScalarOp& operator+=(const ScalarOp& o) {
        for (auto& [n, c] : o.c_) add_term(n, c);
        return *this;
    }
    ScalarOp& operator-=(const ScalarOp& o) {
        for (auto& [n, c] : o.c_) add_term(n, -c);
        return *this;
    }
    friend ScalarOp operator+(ScalarOp a, const ScalarOp& b) { return a += b; }
    friend ScalarOp operator-(ScalarOp a, const ScalarOp& b) { return a -= b; }
    bool operator==(const ScalarOp& o) const { return c_ == o.c_; }
    bool operator!=(const ScalarOp& o) const { return !(*this == o); }

    // left multiplication by a coefficient
    friend ScalarOp operator*(const R& a, const ScalarOp& p) {
        ScalarOp r;
        for (auto& [n, c] : p.c_) r.add_term(n, a * c);
        return r;
    }

    // composition, d o a = a d + a'
    friend ScalarOp operator*(const ScalarOp& a, const ScalarOp& b) {
        ScalarOp r;
        if (a.is_zero() || b.is_zero()) return r;
        unsigned top = static_cast<unsigned>(a.order());
        for (auto& [n, bc] : b.c_) {
            std::vector<R> ders{bc};
            for (unsigned j = 1; j <= top; ++j) ders.push_back(ders.back().derivative());
            for (auto& [m, ac] : a.c_)
                for (unsigned j = 0; j <= m; ++j) {
                    if (ders[j].is_zero()) continue;
                    r.add_term(m + n - j, ac * ders[j] * R(binom(m, j)));
                }
        }
        return r;
    }

    // sum (-d)^n o a_n
    ScalarOp adjoint() const {
        ScalarOp r;
        for (auto& [n, c] : c_) {
            std::vector<R> ders{c};
            for (unsigned j = 1; j <= n; ++j) ders.push_back(ders.back().derivative());
            Rat sign = (n % 2) ? Rat(-1) : Rat(1);
            for (unsigned j = 0; j <= n; ++j) r.add_term(j, ders[n - j] * R(sign * binom(n, j)));
        }
        return r;
    }

    R apply(const R& f) const {
        R out;
        R der = f;
        unsigned at = 0;
        for (auto& [n, c] : c_) {
            while (at < n) {
                der = der.derivative();
                ++at;
            }
            out += c * der;
        }
        return out;
    }

    template <class S, class Fn>
    ScalarOp<S> map(Fn fn) const {
        ScalarOp<S> r;
        for (auto& [n, c] : c_) r.add_term(n, fn(c));
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [n, c] : c_) {
            std::string cs = c.str();
            std::string body = !cs.empty() && cs[0] == '-' ? cs.substr(1) : cs;
            bool multi = body.find(" + ") != std::string::npos || body.find(" - ") != std::string::npos;
            bool neg = !multi && body.size() < cs.size();
            if (neg) cs = body;
            if (!first) os << (neg ? " - " : " + ");
            else if (neg) os << "-";
            std::string dpart = n == 0 ? "" : (n == 1 ? "d" : "d^" + std::to_string(n));
            if (n == 0) {
                os << (multi && !first ? "(" + cs + ")" : cs);
            } else if (cs == "1") {
                os << dpart;
            } else {
                os << (multi ? "(" + cs + ")" : cs) << "*" << dpart;
            }
            first = false;
        }
        return os.str();
    }

private:
    Coeffs c_;
};

template <class R>
class MatOp {
public:
    MatOp() = default;
    MatOp(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}
    static MatOp identity(std::size_t n) {
        MatOp m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ScalarOp<R>(1);
        return m;
    }
    static MatOp scalar(const ScalarOp<R>& p) {
        MatOp m(1, 1);
        m.at(0, 0) = p;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }
    ScalarOp<R>& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const ScalarOp<R>& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    bool is_zero() const {
        for (auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }
    int order() const {
        int o = -1;
        for (auto& p : e_) o = std::max(o, p.order());
        return o;
    }

    MatOp operator-() const {
        MatOp m = *this;
        for (auto& p : m.e_) p = -p;
        return m;
    }
    MatOp& operator+=(const MatOp& o) {
        check_same(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    MatOp& operator-=(const MatOp& o) {
        check_same(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    friend MatOp operator+(MatOp a, const MatOp& b) { return a += b; }
    friend MatOp operator-(MatOp a, const MatOp& b) { return a -= b; }
    bool operator==(const MatOp& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }
    bool operator!=(const MatOp& o) const { return !(*this == o); }

    friend MatOp operator*(const MatOp& a, const MatOp& b) {
        if (a.c_ != b.r_) throw ShapeMismatch("operator shapes do not compose");
        MatOp m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j)
                for (std::size_t k = 0; k < a.c_; ++k)
                    if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) m.at(i, j) += a.at(i, k) * b.at(k, j);
        return m;
    }

    MatOp adjoint() const {
        MatOp m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j).adjoint();
        return m;
    }

    std::vector<R> apply(const std::vector<R>& v) const {
        if (v.size() != c_) throw ShapeMismatch("vector length does not match operator");
        std::vector<R> out(r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!at(i, j).is_zero()) out[i] += at(i, j).apply(v[j]);
        return out;
    }

    template <class S, class Fn>
    MatOp<S> map(Fn fn) const {
        MatOp<S> m(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j).template map<S>(fn);
        return m;
    }

    std::string str() const {
        if (r_ == 1 && c_ == 1) return at(0, 0).str();
        std::string s = "[";
        for (std::size_t i = 0; i < r_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + at(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    void check_same(const MatOp& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("operator shapes differ");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<ScalarOp<R>> e_;
};

using DiffOp = ScalarOp<DiffPoly>;
using FieldOp = ScalarOp<RatFunc>;
using MatDiffOp = MatOp<DiffPoly>;
using MatFieldOp = MatOp<RatFunc>;

MatFieldOp to_field(const MatDiffOp& m);
FieldOp to_field(const DiffOp& p);
MatDiffOp to_diffpoly(const MatFieldOp& m);  // denominators must be jet free
bool is_quasiconstant(const MatDiffOp& m);
MatFieldOp quasiconstant_part(const MatDiffOp& m);  // throws NotQuasiconstant

// Pseudodifferential operator sum_{n <= order} c_n d^n, known exactly for n >= lo.
class PseudoOp {
public:
    static constexpr int kExact = INT_MIN / 4;

    PseudoOp() = default;
    PseudoOp(const RatFunc& c) {
        if (!c.is_zero()) c_.emplace(0, c);
    }
    PseudoOp(const FieldOp& p);
    static PseudoOp term(const RatFunc& c, int n);
    static PseudoOp d(int n) { return term(RatFunc(1), n); }

    bool exact() const { return lo_ == kExact; }
    int lo() const { return lo_; }
    void set_lo(int lo);
    bool known_zero() const { return c_.empty() && exact(); }
    bool has_lead() const { return !c_.empty(); }  // leading term is determined
    int order() const;                             // throws TruncationExceeded when undetermined
    RatFunc lead() const;
    RatFunc coeff(int n) const;  // throws TruncationExceeded below lo
    const std::map<int, RatFunc>& coeffs() const { return c_; }
    void add_term(int n, const RatFunc& c);

    PseudoOp operator-() const;
    PseudoOp& operator+=(const PseudoOp& o);
    PseudoOp& operator-=(const PseudoOp& o);
    friend PseudoOp operator+(PseudoOp a, const PseudoOp& b) { return a += b; }
    friend PseudoOp operator-(PseudoOp a, const PseudoOp& b) { return a -= b; }

    // product computed down to order ord(a) + ord(b) - depth
    static PseudoOp compose(const PseudoOp& a, const PseudoOp& b, int depth);
    PseudoOp inverse(int depth) const;
    std::string str() const;

private:
    std::map<int, RatFunc> c_;
    int lo_ = kExact;
};

class PseudoMat {
public:
    PseudoMat() = default;
    PseudoMat(std::size_t n, std::size_t m) : r_(n), c_(m), e_(n * m) {}
    explicit PseudoMat(const MatFieldOp& m);
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    PseudoOp& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const PseudoOp& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }
    static PseudoMat compose(const PseudoMat& a, const PseudoMat& b, int depth);
    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<PseudoOp> e_;
};

// ---- canonical forms

struct CanonicalForms {
    std::map<unsigned, RatFunc> a;  // sum a_n d^n
    std::map<unsigned, RatFunc> b;  // sum d^n o b_n
    std::map<unsigned, RatFunc> c;  // sum d^(m+1) o c_m d^m
    std::map<unsigned, RatFunc> d;  // sum d^n o d_n d^n
};
CanonicalForms canonical_forms(const FieldOp& p);
FieldOp from_b_form(const std::map<unsigned, RatFunc>& b);
FieldOp from_cd_form(const std::map<unsigned, RatFunc>& c, const std::map<unsigned, RatFunc>& d);

// S = sum d^m o (d o a_m + a_m d) d^m + sum d^m o b_m d^m
struct SkewDecomposition {
    std::map<unsigned, MatFieldOp> a;  // order-0 matrices, selfadjoint for skewadjoint S
    std::map<unsigned, MatFieldOp> b;  // order-0 matrices, skewadjoint for skewadjoint S
};
SkewDecomposition skewadjoint_decompose(const MatFieldOp& s, bool selfadjoint_variant = false);
MatFieldOp from_skew_decomposition(const SkewDecomposition& dec, std::size_t n);

// ---- majorants and elimination

struct Majorant {
    std::vector<int> N;
    std::vector<int> h;
    bool operator==(const Majorant& o) const { return N == o.N && h == o.h; }
};

struct LeadingEntry {
    RatFunc coeff;
    int power = 0;
};
using LeadingMatrix = std::vector<std::vector<LeadingEntry>>;

Majorant majorant(const MatFieldOp& m);
Majorant majorant(const PseudoMat& m);
bool is_majorant(const MatFieldOp& m, const Majorant& maj);
LeadingMatrix leading_matrix(const MatFieldOp& m, const Majorant& maj);
LeadingMatrix leading_matrix(const PseudoMat& m, const Majorant& maj);
std::optional<RatFunc> leading_det(const LeadingMatrix& lm);  // det of M(1), nullopt when zero

struct RowOp {
    enum Kind { Swap, Sub } kind = Swap;
    std::size_t i = 0, j = 0;  // Sub: row i -= p o row j
    FieldOp p;
};

struct Echelon {
    MatFieldOp m;
    std::vector<RowOp> ops;
};
Echelon row_echelon(const MatFieldOp& m);
MatFieldOp apply_row_ops(MatFieldOp m, const std::vector<RowOp>& ops);

struct Reduced {
    MatFieldOp m;
    PseudoMat pm;
    Majorant maj;  // h permuted along with the rows
    std::vector<std::size_t> col_perm;
    std::vector<std::size_t> row_perm;
};
Reduced majorant_preserving_reduce(const MatFieldOp& m, const Majorant& maj);
Reduced majorant_preserving_reduce(const PseudoMat& m, const Majorant& maj, int depth = 8);

struct DetValue {
    RatFunc c;
    int degree = 0;
    bool operator==(const DetValue& o) const { return c == o.c && degree == o.degree; }
};
std::optional<DetValue> dieudonne_det(const MatFieldOp& m);  // nullopt means zero
std::optional<DetValue> dieudonne_det(const PseudoMat& m, int max_depth = 64);

std::optional<int> kernel_dim_bound(const MatFieldOp& m);  // nullopt means infinite

}  // namespace vp
