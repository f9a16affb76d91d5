#include "varpois/diffop.hpp"

#include <numeric>

namespace vp {

Rat binom(long n, long k) {
    if (k < 0) return Rat(0);
    Rat r(1);
    for (long i = 0; i < k; ++i) r = r * Rat(n - i) / Rat(i + 1);
    return r;
}

FieldOp to_field(const DiffOp& p) {
    return p.map<RatFunc>([](const DiffPoly& c) { return c.to_ratfunc(); });
}

MatFieldOp to_field(const MatDiffOp& m) {
    return m.map<RatFunc>([](const DiffPoly& c) { return c.to_ratfunc(); });
}

MatDiffOp to_diffpoly(const MatFieldOp& m) {
    return m.map<DiffPoly>([](const RatFunc& c) { return DiffPoly::from_ratfunc(c); });
}

bool is_quasiconstant(const MatDiffOp& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (auto& [n, c] : m.at(i, j).coeffs())
                if (!c.is_quasiconstant()) return false;
    return true;
}

MatFieldOp quasiconstant_part(const MatDiffOp& m) {
    if (!is_quasiconstant(m)) throw NotQuasiconstant("operator coefficients depend on u");
    return m.map<RatFunc>([](const DiffPoly& c) { return c.quasiconstant_part(); });
}

// ---------------------------------------------------------------- PseudoOp

PseudoOp::PseudoOp(const FieldOp& p) {
    for (auto& [n, c] : p.coeffs()) c_.emplace(static_cast<int>(n), c);
}

PseudoOp PseudoOp::term(const RatFunc& c, int n) {
    PseudoOp p;
    p.add_term(n, c);
    return p;
}

void PseudoOp::set_lo(int lo) {
    lo_ = lo;
    c_.erase(c_.begin(), c_.lower_bound(lo));
}

int PseudoOp::order() const {
    if (c_.empty()) {
        if (exact()) return kExact;
        throw TruncationExceeded("leading term below truncation depth");
    }
    return c_.rbegin()->first;
}

RatFunc PseudoOp::lead() const {
    if (c_.empty()) {
        if (exact()) return RatFunc();
        throw TruncationExceeded("leading term below truncation depth");
    }
    return c_.rbegin()->second;
}

RatFunc PseudoOp::coeff(int n) const {
    if (n < lo_) throw TruncationExceeded("coefficient of d^" + std::to_string(n) + " below truncation depth");
    auto it = c_.find(n);
    return it == c_.end() ? RatFunc() : it->second;
}

void PseudoOp::add_term(int n, const RatFunc& c) {
    if (c.is_zero() || n < lo_) return;
    auto [it, ins] = c_.emplace(n, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

PseudoOp PseudoOp::operator-() const {
    PseudoOp r = *this;
    for (auto& [n, c] : r.c_) c = -c;
    return r;
}

PseudoOp& PseudoOp::operator+=(const PseudoOp& o) {
    if (o.lo_ > lo_) set_lo(o.lo_);
    for (auto& [n, c] : o.c_) add_term(n, c);
    return *this;
}

PseudoOp& PseudoOp::operator-=(const PseudoOp& o) { return *this += -o; }

PseudoOp PseudoOp::compose(const PseudoOp& a, const PseudoOp& b, int depth) {
    if (a.known_zero() || b.known_zero()) return PseudoOp();
    int oa = a.order(), ob = b.order();
    bool a_diff = a.exact() && a.c_.begin()->first >= 0;
    PseudoOp r;
    int lo = kExact;
    if (!(a_diff && b.exact())) {
        lo = oa + ob - depth;
        if (!a.exact()) lo = std::max(lo, a.lo_ + ob);
        if (!b.exact()) lo = std::max(lo, oa + b.lo_);
    }
    r.lo_ = lo;
    for (auto& [n, bc] : b.c_) {
        std::vector<RatFunc> ders{bc};
        for (auto& [m, ac] : a.c_) {
            for (long j = 0;; ++j) {
                if (m >= 0 && j > m) break;
                long t = static_cast<long>(m) + n - j;
                if (t < lo) break;
                while (static_cast<long>(ders.size()) <= j) ders.push_back(ders.back().derivative());
                if (ders[j].is_zero()) continue;
                r.add_term(static_cast<int>(t), ac * ders[j] * RatFunc(binom(m, j)));
            }
        }
    }
    return r;
}

PseudoOp PseudoOp::inverse(int depth) const {
    if (known_zero()) throw std::domain_error("inverse of zero operator");
    int n = order();
    RatFunc ainv = lead().inverse();
    PseudoOp x;
    PseudoOp one(RatFunc(1));
    for (int iter = 0; iter <= depth + 1; ++iter) {
        PseudoOp res = one - compose(*this, x, depth);
        if (res.c_.empty()) {
            x.set_lo(res.lo_ == kExact ? kExact : res.lo_ - n);
            return x;
        }
        auto top = *res.c_.rbegin();
        x.add_term(top.first - n, top.second * ainv);
    }
    PseudoOp res = one - compose(*this, x, depth);
    x.set_lo(res.c_.empty() ? res.lo_ - n : res.c_.rbegin()->first - n + 1);
    return x;
}

std::string PseudoOp::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        auto [n, c] = *it;
        std::string cs = c.str();
        bool neg = cs[0] == '-' && c.size() == 1;
        if (neg) cs = cs.substr(1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (c.size() > 1) cs = "(" + cs + ")";
        std::string dp = n == 0 ? "" : (n == 1 ? "d" : "d^" + (n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n)));
        if (n == 0)
            os << cs;
        else if (cs == "1")
            os << dp;
        else
            os << cs << "*" << dp;
        first = false;
    }
    if (!exact()) os << (first ? "" : " + ") << "O(d^(" << lo_ - 1 << "))";
    else if (first) os << "0";
    return os.str();
}

PseudoMat::PseudoMat(const MatFieldOp& m) : r_(m.rows()), c_(m.cols()), e_(m.rows() * m.cols()) {
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) at(i, j) = PseudoOp(m.at(i, j));
}

PseudoMat PseudoMat::compose(const PseudoMat& a, const PseudoMat& b, int depth) {
    if (a.c_ != b.r_) throw ShapeMismatch("operator shapes do not compose");
    PseudoMat m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t j = 0; j < b.c_; ++j)
            for (std::size_t k = 0; k < a.c_; ++k) m.at(i, j) += PseudoOp::compose(a.at(i, k), b.at(k, j), depth);
    return m;
}

std::string PseudoMat::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < r_; ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + at(i, j).str();
        s += "]";
    }
    return s + "]";
}

// ---------------------------------------------------------- canonical forms

CanonicalForms canonical_forms(const FieldOp& p) {
    CanonicalForms f;
    for (auto& [n, c] : p.coeffs()) f.a.emplace(n, c);
    FieldOp rem = p;
    while (!rem.is_zero()) {
        unsigned n = static_cast<unsigned>(rem.order());
        RatFunc c = rem.lead();
        f.b.emplace(n, c);
        rem -= FieldOp::d(n) * FieldOp(c);
    }
    rem = p;
    while (!rem.is_zero()) {
        unsigned o = static_cast<unsigned>(rem.order());
        RatFunc c = rem.lead();
        if (o % 2 == 0) {
            f.d.emplace(o / 2, c);
            rem -= FieldOp::d(o / 2) * FieldOp(c) * FieldOp::d(o / 2);
        } else {
            unsigned m = (o - 1) / 2;
            f.c.emplace(m, c);
            rem -= FieldOp::d(m + 1) * FieldOp(c) * FieldOp::d(m);
        }
    }
    return f;
}

FieldOp from_b_form(const std::map<unsigned, RatFunc>& b) {
    FieldOp p;
    for (auto& [n, c] : b) p += FieldOp::d(n) * FieldOp(c);
    return p;
}

FieldOp from_cd_form(const std::map<unsigned, RatFunc>& c, const std::map<unsigned, RatFunc>& d) {
    FieldOp p;
    for (auto& [m, v] : c) p += FieldOp::d(m + 1) * FieldOp(v) * FieldOp::d(m);
    for (auto& [n, v] : d) p += FieldOp::d(n) * FieldOp(v) * FieldOp::d(n);
    return p;
}

namespace {

MatFieldOp dmat(std::size_t n, unsigned k) {
    MatFieldOp m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldOp::d(k);
    return m;
}

MatFieldOp lead_block(const MatFieldOp& s, unsigned o) {
    MatFieldOp m(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) m.at(i, j) = FieldOp(s.at(i, j).coeff(o));
    return m;
}

}  // namespace

SkewDecomposition skewadjoint_decompose(const MatFieldOp& s, bool selfadjoint_variant) {
    if (!s.square()) throw ShapeMismatch("skewadjoint decomposition needs a square operator");
    MatFieldOp adj = s.adjoint();
    if (selfadjoint_variant ? adj != s : adj != -s)
        throw NotSkewadjoint(selfadjoint_variant ? "operator is not selfadjoint" : "operator is not skewadjoint");
    std::size_t n = s.rows();
    SkewDecomposition dec;
    MatFieldOp rem = s;
    while (!rem.is_zero()) {
        unsigned o = static_cast<unsigned>(rem.order());
        MatFieldOp l = lead_block(rem, o);
        if (o % 2) {
            unsigned m = (o - 1) / 2;
            MatFieldOp a = l;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) a.at(i, j) = RatFunc(Rat(1, 2)) * a.at(i, j);
            dec.a.emplace(m, a);
            rem -= dmat(n, m) * (dmat(n, 1) * a + a * dmat(n, 1)) * dmat(n, m);
        } else {
            unsigned m = o / 2;
            dec.b.emplace(m, l);
            rem -= dmat(n, m) * l * dmat(n, m);
        }
    }
    return dec;
}

MatFieldOp from_skew_decomposition(const SkewDecomposition& dec, std::size_t n) {
    MatFieldOp s(n, n);
    for (auto& [m, a] : dec.a) s += dmat(n, m) * (dmat(n, 1) * a + a * dmat(n, 1)) * dmat(n, m);
    for (auto& [m, b] : dec.b) s += dmat(n, m) * b * dmat(n, m);
    return s;
}

// ---------------------------------------------------------------- majorants

namespace {

constexpr int kNegInf = INT_MIN / 4;

Majorant majorant_from_orders(const std::vector<std::vector<int>>& ord) {
    std::size_t m = ord.size(), l = m ? ord[0].size() : 0;
    Majorant maj;
    maj.N.assign(l, kNegInf);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < l; ++j) maj.N[j] = std::max(maj.N[j], ord[i][j]);
    for (std::size_t j = 0; j < l; ++j)
        if (maj.N[j] == kNegInf) throw DegenerateShape("column " + std::to_string(j + 1) + " is zero");
    int nmin = l ? *std::min_element(maj.N.begin(), maj.N.end()) : 0;
    maj.h.assign(m, INT_MAX);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j)
            if (ord[i][j] != kNegInf) maj.h[i] = std::min(maj.h[i], maj.N[j] - ord[i][j]);
        if (maj.h[i] == INT_MAX) maj.h[i] = nmin;
    }
    return maj;
}

RatFunc det_field(std::vector<std::vector<RatFunc>> a) {
    std::size_t n = a.size();
    RatFunc det(1);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = n;
        for (std::size_t i = j; i < n; ++i)
            if (!a[i][j].is_zero() && (p == n || (a[i][j].is_rational() && !a[p][j].is_rational()))) p = i;
        if (p == n) return RatFunc();
        if (p != j) {
            std::swap(a[p], a[j]);
            det = -det;
        }
        det *= a[j][j];
        RatFunc inv = a[j][j].inverse();
        for (std::size_t i = j + 1; i < n; ++i) {
            if (a[i][j].is_zero()) continue;
            RatFunc f = a[i][j] * inv;
            for (std::size_t k = j; k < n; ++k) a[i][k] -= f * a[j][k];
        }
    }
    return det;
}

}  // namespace

Majorant majorant(const MatFieldOp& m) {
    if (m.is_zero()) throw DegenerateShape("zero matrix has no majorant");
    std::vector<std::vector<int>> ord(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) ord[i][j] = m.at(i, j).is_zero() ? kNegInf : m.at(i, j).order();
    return majorant_from_orders(ord);
}

Majorant majorant(const PseudoMat& m) {
    std::vector<std::vector<int>> ord(m.rows(), std::vector<int>(m.cols()));
    bool any = false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            ord[i][j] = m.at(i, j).known_zero() ? kNegInf : m.at(i, j).order();
            any = any || ord[i][j] != kNegInf;
        }
    if (!any) throw DegenerateShape("zero matrix has no majorant");
    return majorant_from_orders(ord);
}

bool is_majorant(const MatFieldOp& m, const Majorant& maj) {
    if (maj.N.size() != m.cols() || maj.h.size() != m.rows()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && m.at(i, j).order() > maj.N[j] - maj.h[i]) return false;
    return true;
}

LeadingMatrix leading_matrix(const MatFieldOp& m, const Majorant& maj) {
    if (!is_majorant(m, maj)) throw NotAMajorant("orders exceed N_j - h_i");
    LeadingMatrix lm(m.rows(), std::vector<LeadingEntry>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            int p = maj.N[j] - maj.h[i];
            lm[i][j].power = p;
            if (p >= 0) lm[i][j].coeff = m.at(i, j).coeff(static_cast<unsigned>(p));
        }
    return lm;
}

LeadingMatrix leading_matrix(const PseudoMat& m, const Majorant& maj) {
    if (maj.N.size() != m.cols() || maj.h.size() != m.rows()) throw NotAMajorant("majorant shape mismatch");
    LeadingMatrix lm(m.rows(), std::vector<LeadingEntry>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            int p = maj.N[j] - maj.h[i];
            const PseudoOp& e = m.at(i, j);
            if (!e.known_zero() && e.order() > p) throw NotAMajorant("orders exceed N_j - h_i");
            lm[i][j].power = p;
            lm[i][j].coeff = e.known_zero() ? RatFunc() : e.coeff(p);
        }
    return lm;
}

std::optional<RatFunc> leading_det(const LeadingMatrix& lm) {
    if (lm.empty() || lm.size() != lm[0].size()) throw ShapeMismatch("leading matrix is not square");
    std::vector<std::vector<RatFunc>> a(lm.size(), std::vector<RatFunc>(lm.size()));
    for (std::size_t i = 0; i < lm.size(); ++i)
        for (std::size_t j = 0; j < lm.size(); ++j) a[i][j] = lm[i][j].coeff;
    RatFunc d = det_field(a);
    if (d.is_zero()) return std::nullopt;
    return d;
}

// --------------------------------------------------------------- elimination

namespace {

// a = q o b + r with ord r < ord b
FieldOp right_quotient(FieldOp a, const FieldOp& b) {
    FieldOp q;
    RatFunc binv = b.lead().inverse();
    int ob = b.order();
    while (!a.is_zero() && a.order() >= ob) {
        FieldOp t = FieldOp::term(a.lead() * binv, static_cast<unsigned>(a.order() - ob));
        q += t;
        a -= t * b;
    }
    return q;
}

void sub_row(MatFieldOp& m, std::size_t i, std::size_t j, const FieldOp& p) {
    for (std::size_t k = 0; k < m.cols(); ++k)
        if (!m.at(j, k).is_zero()) m.at(i, k) -= p * m.at(j, k);
}

void swap_rows(MatFieldOp& m, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(i, k), m.at(j, k));
}

}  // namespace

Echelon row_echelon(const MatFieldOp& in) {
    Echelon e{in, {}};
    MatFieldOp& m = e.m;
    std::size_t r = 0;
    for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
        for (;;) {
            std::size_t p = m.rows();
            for (std::size_t i = r; i < m.rows(); ++i)
                if (!m.at(i, j).is_zero() && (p == m.rows() || m.at(i, j).order() < m.at(p, j).order())) p = i;
            if (p == m.rows()) break;
            if (p != r) {
                swap_rows(m, r, p);
                e.ops.push_back({RowOp::Swap, r, p, {}});
            }
            bool clear = true;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (m.at(i, j).is_zero()) continue;
                FieldOp q = right_quotient(m.at(i, j), m.at(r, j));
                sub_row(m, i, r, q);
                e.ops.push_back({RowOp::Sub, i, r, q});
                if (!m.at(i, j).is_zero()) clear = false;
            }
            if (clear) {
                ++r;
                break;
            }
        }
    }
    return e;
}

MatFieldOp apply_row_ops(MatFieldOp m, const std::vector<RowOp>& ops) {
    for (auto& op : ops) {
        if (op.kind == RowOp::Swap)
            swap_rows(m, op.i, op.j);
        else
            sub_row(m, op.i, op.j, op.p);
    }
    return m;
}

std::optional<DetValue> dieudonne_det(const MatFieldOp& m) {
    if (!m.square()) throw ShapeMismatch("determinant needs a square operator");
    Echelon e = row_echelon(m);
    DetValue v{RatFunc(1), 0};
    for (auto& op : e.ops)
        if (op.kind == RowOp::Swap) v.c = -v.c;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const FieldOp& d = e.m.at(i, i);
        if (d.is_zero()) return std::nullopt;
        v.c *= d.lead();
        v.degree += d.order();
    }
    return v;
}

namespace {

std::optional<DetValue> pseudo_det_at(PseudoMat m, int depth) {
    std::size_t n = m.rows();
    DetValue v{RatFunc(1), 0};
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = n;
        for (std::size_t i = j; i < n; ++i) {
            const PseudoOp& e = m.at(i, j);
            if (e.known_zero()) continue;
            if (!e.has_lead()) throw TruncationExceeded("pivot undetermined");
            if (p == n || e.order() > m.at(p, j).order()) p = i;
        }
        if (p == n) return std::nullopt;
        if (p != j) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m.at(p, k), m.at(j, k));
            v.c = -v.c;
        }
        PseudoOp inv = m.at(j, j).inverse(depth);
        for (std::size_t i = j + 1; i < n; ++i) {
            if (m.at(i, j).known_zero()) continue;
            PseudoOp f = PseudoOp::compose(m.at(i, j), inv, depth);
            for (std::size_t k = j + 1; k < n; ++k) m.at(i, k) -= PseudoOp::compose(f, m.at(j, k), depth);
            m.at(i, j) = PseudoOp();
        }
        v.c *= m.at(j, j).lead();
        v.degree += m.at(j, j).order();
    }
    return v;
}

}  // namespace

std::optional<DetValue> dieudonne_det(const PseudoMat& m, int max_depth) {
    if (m.rows() != m.cols()) throw ShapeMismatch("determinant needs a square operator");
    for (int depth = 4; depth <= max_depth; depth *= 2) {
        try {
            return pseudo_det_at(m, depth);
        } catch (const TruncationExceeded&) {
        }
    }
    return std::nullopt;
}

Reduced majorant_preserving_reduce(const MatFieldOp& in, const Majorant& maj) {
    if (!in.square()) throw ShapeMismatch("reduction needs a square operator");
    if (!leading_det(leading_matrix(in, maj))) throw DegenerateLeadingMatrix("leading matrix is degenerate");
    std::size_t n = in.rows();
    Reduced r{in, {}, maj, {}, {}};
    r.col_perm.resize(n);
    r.row_perm.resize(n);
    std::iota(r.col_perm.begin(), r.col_perm.end(), 0);
    std::iota(r.row_perm.begin(), r.row_perm.end(), 0);
    MatFieldOp& m = r.m;
    std::vector<int>& h = r.maj.h;
    auto lead_at = [&](std::size_t i, std::size_t j) {
        int p = maj.N[j] - h[i];
        return p < 0 ? RatFunc() : m.at(i, j).coeff(static_cast<unsigned>(p));
    };
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = n;
        for (std::size_t i = j; i < n; ++i)
            if (!lead_at(i, j).is_zero() && (p == n || h[i] > h[p])) p = i;
        if (p == n) throw DegenerateLeadingMatrix("no pivot in column " + std::to_string(j + 1));
        if (p != j) {
            swap_rows(m, j, p);
            std::swap(h[j], h[p]);
            std::swap(r.row_perm[j], r.row_perm[p]);
        }
        RatFunc inv = lead_at(j, j).inverse();
        for (std::size_t i = j + 1; i < n; ++i) {
            RatFunc c = lead_at(i, j);
            if (c.is_zero()) continue;
            sub_row(m, i, j, FieldOp::term(c * inv, static_cast<unsigned>(h[j] - h[i])));
        }
    }
    return r;
}

Reduced majorant_preserving_reduce(const PseudoMat& in, const Majorant& maj, int depth) {
    if (in.rows() != in.cols()) throw ShapeMismatch("reduction needs a square operator");
    if (!leading_det(leading_matrix(in, maj))) throw DegenerateLeadingMatrix("leading matrix is degenerate");
    std::size_t n = in.rows();
    Reduced r{{}, in, maj, {}, {}};
    r.col_perm.resize(n);
    r.row_perm.resize(n);
    std::iota(r.col_perm.begin(), r.col_perm.end(), 0);
    std::iota(r.row_perm.begin(), r.row_perm.end(), 0);
    PseudoMat& m = r.pm;
    std::vector<int>& h = r.maj.h;
    auto lead_at = [&](std::size_t i, std::size_t j) {
        const PseudoOp& e = m.at(i, j);
        return e.known_zero() ? RatFunc() : e.coeff(maj.N[j] - h[i]);
    };
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = n;
        for (std::size_t i = j; i < n; ++i)
            if (!lead_at(i, j).is_zero()) {
                p = i;
                break;
            }
        if (p == n) throw DegenerateLeadingMatrix("no pivot in column " + std::to_string(j + 1));
        if (p != j) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m.at(j, k), m.at(p, k));
            std::swap(h[j], h[p]);
            std::swap(r.row_perm[j], r.row_perm[p]);
        }
        PseudoOp inv = m.at(j, j).inverse(depth);
        for (std::size_t i = j + 1; i < n; ++i) {
            if (m.at(i, j).known_zero()) continue;
            PseudoOp f = PseudoOp::compose(m.at(i, j), inv, depth);
            for (std::size_t k = j + 1; k < n; ++k) m.at(i, k) -= PseudoOp::compose(f, m.at(j, k), depth);
            m.at(i, j) = PseudoOp();
        }
    }
    return r;
}

std::optional<int> kernel_dim_bound(const MatFieldOp& m) {
    auto d = dieudonne_det(m);
    if (!d) return std::nullopt;
    return d->degree;
}

}  // namespace vp
