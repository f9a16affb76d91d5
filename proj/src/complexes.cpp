#include "varpois/complexes.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>
#include <sstream>

#include "varpois/errors.hpp"
#include "varpois/linalg.hpp"

namespace vp {

namespace {

int perm_sign(const std::vector<unsigned>& p) {
    int s = 1;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) s = -s;
    return s;
}

Rat factorial(unsigned n) {
    Rat r(1);
    for (unsigned k = 2; k <= n; ++k) r *= Rat(k);
    return r;
}

Index drop(const Index& t, unsigned a) {
    Index r;
    for (unsigned k = 0; k < t.size(); ++k)
        if (k != a) r.push_back(t[k]);
    return r;
}

// variables of a k-ary entry placed into k+1 slots, skipping slot a
std::vector<unsigned> skip_perm(unsigned k, unsigned a) {
    std::vector<unsigned> p(k);
    for (unsigned r = 0; r < k; ++r) p[r] = r < a ? r : r + 1;
    return p;
}

template <class R>
LPoly symbol(const ScalarOp<R>& op, unsigned nv, unsigned var) {
    LPoly p(nv);
    for (auto& [n, c] : op.coeffs()) {
        Exps e(nv, 0);
        e[var] = n;
        p.add_term(e, DiffPoly(c));
    }
    return p;
}

std::set<JetVar> jets_of(const LPoly& p) {
    std::set<JetVar> s;
    for (auto& [e, c] : p.terms())
        for (auto& v : c.jets()) s.insert(v);
    return s;
}

LinForm shifted_var(unsigned nv, unsigned a) {
    LinForm f = LinForm::var(nv, a);
    f.d = 1;
    return f;
}

FiltrationLevel normalize(FiltrationLevel L, unsigned ell) {
    if (L.i == 0 && L.m > 0) return {L.m - 1, ell};
    return L;
}

bool jet_le(JetVar v, unsigned m, unsigned i) { return v.n < m || (v.n == m && v.i <= i); }

}  // namespace

LPoly rename_vars(const LPoly& p, unsigned nv_target, const std::vector<unsigned>& perm) {
    LPoly r(nv_target);
    for (auto& [e, c] : p.terms()) {
        Exps x(nv_target, 0);
        for (unsigned k = 0; k < e.size(); ++k) x[perm[k]] += e[k];
        r.add_term(x, c);
    }
    return r;
}

void SkewArray::set(const Index& s, const LPoly& p) {
    if (s.size() != k_) throw ShapeMismatch("index tuple has wrong length");
    if (p.is_zero())
        e_.erase(s);
    else
        e_[s] = p;
}

void SkewArray::add(const Index& s, const LPoly& p) {
    if (p.is_zero()) return;
    auto it = e_.find(s);
    if (it == e_.end()) {
        set(s, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) e_.erase(it);
}

LPoly SkewArray::stored(const Index& s) const {
    auto it = e_.find(s);
    return it == e_.end() ? LPoly(k_) : it->second;
}

LPoly SkewArray::at(const Index& t) const {
    if (t.size() != k_) throw ShapeMismatch("index tuple has wrong length");
    std::vector<unsigned> idx(k_);
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](unsigned a, unsigned b) { return t[a] < t[b]; });
    Index s(k_);
    for (unsigned r = 0; r < k_; ++r) s[r] = t[idx[r]];
    auto it = e_.find(s);
    if (it == e_.end()) return LPoly(k_);
    LPoly p = rename_vars(it->second, k_, idx);
    return perm_sign(idx) < 0 ? -p : p;
}

SkewArray SkewArray::operator-() const {
    SkewArray r = *this;
    for (auto& [k, p] : r.e_) p = -p;
    return r;
}

SkewArray& SkewArray::operator+=(const SkewArray& o) {
    if (o.k_ != k_) throw ShapeMismatch("arrays have different arity");
    for (auto& [k, p] : o.e_) add(k, p);
    return *this;
}

SkewArray& SkewArray::operator-=(const SkewArray& o) { return *this += -o; }

SkewArray& SkewArray::operator*=(const DiffPoly& c) {
    std::map<Index, LPoly> n;
    for (auto& [k, p] : e_) {
        LPoly q = p * c;
        if (!q.is_zero()) n.emplace(k, std::move(q));
    }
    e_ = std::move(n);
    return *this;
}

SkewArray SkewArray::map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& fn) const {
    SkewArray r(k_, ell_);
    for (auto& [k, p] : e_) r.set(k, p.map_coeffs(fn));
    return r;
}

bool SkewArray::is_skew() const {
    for (auto& [s, p] : e_) {
        std::vector<unsigned> perm(k_);
        std::iota(perm.begin(), perm.end(), 0u);
        do {
            bool fixes = true;
            for (unsigned r = 0; r < k_; ++r)
                if (s[perm[r]] != s[r]) fixes = false;
            if (!fixes) continue;
            LPoly q = rename_vars(p, k_, perm);
            if (perm_sign(perm) < 0) q = -q;
            if (q != p) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return true;
}

SkewArray SkewArray::scalar(unsigned ell, const DiffPoly& f) {
    SkewArray a(0, ell);
    a.set({}, LPoly::constant(0, f));
    return a;
}

std::vector<Index> SkewArray::sorted_keys(unsigned k, unsigned ell) {
    std::vector<Index> out;
    Index cur(k, 1);
    if (k == 0) return {Index{}};
    if (ell == 0) return {};
    while (true) {
        out.push_back(cur);
        int p = static_cast<int>(k) - 1;
        while (p >= 0 && cur[p] == ell) --p;
        if (p < 0) break;
        unsigned v = cur[p] + 1;
        for (unsigned q = p; q < k; ++q) cur[q] = v;
    }
    return out;
}

SkewArray SkewArray::antisymmetrize(unsigned k, unsigned ell, const std::function<LPoly(const Index&)>& entry) {
    SkewArray out(k, ell);
    DiffPoly scale(Rat(1) / factorial(k));
    for (auto& s : sorted_keys(k, ell)) {
        std::map<Index, LPoly> cache;
        std::vector<unsigned> perm(k);
        std::iota(perm.begin(), perm.end(), 0u);
        LPoly acc(k);
        do {
            Index t(k);
            for (unsigned r = 0; r < k; ++r) t[r] = s[perm[r]];
            auto it = cache.find(t);
            if (it == cache.end()) it = cache.emplace(t, entry(t)).first;
            if (it->second.is_zero()) continue;
            LPoly q = rename_vars(it->second, k, perm);
            if (perm_sign(perm) < 0)
                acc -= q;
            else
                acc += q;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.set(s, acc * scale);
    }
    return out;
}

std::string SkewArray::str() const {
    if (e_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [s, p] : e_) {
        if (!first) os << "; ";
        first = false;
        os << "P";
        if (!s.empty()) {
            os << "_";
            for (std::size_t r = 0; r < s.size(); ++r) os << (r ? "," : "") << s[r];
        }
        os << " = " << p.str();
    }
    return os.str();
}

std::map<Index, LPoly> QuotientArray::normal_form() const {
    unsigned k = rep.arity();
    if (k == 0) return rep.entries();
    std::vector<LinForm> forms;
    for (unsigned r = 0; r + 1 < k; ++r) forms.push_back(LinForm::var(k - 1, r));
    LinForm last{std::vector<long>(k - 1, -1), -1};
    forms.push_back(last);
    std::map<Index, LPoly> out;
    for (auto& [s, p] : rep.entries()) {
        LPoly q = p.substitute(k - 1, forms);
        if (!q.is_zero()) out.emplace(s, std::move(q));
    }
    return out;
}

bool QuotientArray::equals(const QuotientArray& o) const {
    if (rep.arity() != o.rep.arity()) return false;
    if (rep.arity() == 0)
        return functional_eq({rep.stored({}).coeff({})}, {o.rep.stored({}).coeff({})}, std::max(rep.ell(), o.rep.ell()));
    return QuotientArray{rep - o.rep}.normal_form().empty();
}

bool QuotientArray::is_zero() const { return equals(QuotientArray{SkewArray(rep.arity(), rep.ell())}); }

SkewArray partial_action(const SkewArray& P) {
    unsigned k = P.arity();
    SkewArray out(k, P.ell());
    LinForm f{std::vector<long>(k, 1), 1};
    for (auto& [s, p] : P.entries()) out.set(s, p.apply_power(f, 1));
    return out;
}

SkewArray delta_K(const SkewArray& P, const MatFieldOp& K) {
    unsigned k = P.arity(), ell = P.ell();
    if (K.rows() != ell || K.cols() != ell) throw ShapeMismatch("K does not match the number of components");
    SkewArray out(k + 1, ell);
    for (auto& s : SkewArray::sorted_keys(k + 1, ell)) {
        LPoly acc(k + 1);
        for (unsigned a = 0; a <= k; ++a) {
            LPoly Pa = rename_vars(P.stored(drop(s, a)), k + 1, skip_perm(k, a));
            if (Pa.is_zero()) continue;
            for (auto& v : jets_of(Pa)) {
                auto& Kji = K.at(v.i - 1, s[a] - 1);
                if (Kji.is_zero()) continue;
                LPoly X = symbol(Kji, k + 1, a).apply_power(shifted_var(k + 1, a), v.n);
                LPoly D = Pa.map_coeffs([&](const DiffPoly& c) { return c.partial(v); });
                LPoly t = D * X;
                if (a % 2)
                    acc -= t;
                else
                    acc += t;
            }
        }
        out.set(s, acc);
    }
    return out;
}

SkewArray delta_K(const SkewArray& P, const MatDiffOp& K) { return delta_K(P, quasiconstant_part(K)); }

SkewArray de_rham_delta(const SkewArray& P) { return delta_K(P, MatFieldOp::identity(P.ell())); }

QuotientArray d_K(const QuotientArray& Pq, const Hamiltonian& K, bool verify) {
    const SkewArray& P = Pq.rep;
    unsigned k = P.arity(), ell = P.ell();
    if (K.ell() != ell) throw ShapeMismatch("K does not match the number of components");
    if (verify) {
        if (!check_skewadjoint(K)) throw NotPoisson("K(d) is not skewadjoint");
        if (!check_jacobi(K).ok) throw NotPoisson("Jacobi identity fails for K");
    }
    unsigned nv = k + 1;
    auto entry = [&](const Index& t) {
        LPoly acc(nv);
        for (unsigned a = 0; a <= k; ++a) {
            LPoly Pa = rename_vars(P.at(drop(t, a)), nv, skip_perm(k, a));
            if (Pa.is_zero()) continue;
            for (auto& v : jets_of(Pa)) {
                auto& Kji = K.H.at(v.i - 1, t[a] - 1);
                if (Kji.is_zero()) continue;
                LPoly X = symbol(Kji, nv, a).apply_power(shifted_var(nv, a), v.n);
                LPoly term = Pa.map_coeffs([&](const DiffPoly& c) { return c.partial(v); }) * X;
                if (a % 2)
                    acc -= term;
                else
                    acc += term;
            }
        }
        for (unsigned a = 0; a <= k; ++a)
            for (unsigned b = a + 1; b <= k; ++b) {
                LPoly Kba = symbol(K.H.at(t[b] - 1, t[a] - 1), nv, a);
                if (Kba.is_zero()) continue;
                Index rest = drop(drop(t, b), a);
                std::vector<unsigned> rem;
                for (unsigned r = 0; r <= k; ++r)
                    if (r != a && r != b) rem.push_back(r);
                std::vector<LinForm> forms;
                LinForm first(LinForm::var(nv, a));
                first.c[b] = 1;
                first.d = 1;
                forms.push_back(first);
                for (unsigned r : rem) forms.push_back(LinForm::var(nv, r));
                LinForm back{std::vector<long>(nv, 0), -1};
                back.c[a] = back.c[b] = -1;
                for (auto& v : jets_of(Kba)) {
                    Index jt{v.i};
                    jt.insert(jt.end(), rest.begin(), rest.end());
                    LPoly Pj = P.at(jt);
                    if (Pj.is_zero()) continue;
                    LPoly X = Kba.map_coeffs([&](const DiffPoly& c) { return c.partial(v); }).apply_power(back, v.n);
                    LPoly term = Pj.act_on(forms, X);
                    if ((a + b) % 2)
                        acc -= term;
                    else
                        acc += term;
                }
            }
        return (k + 1) % 2 ? -acc : acc;
    };
    return QuotientArray{SkewArray::antisymmetrize(nv, ell, entry)};
}

bool in_filtration(const SkewArray& P, FiltrationLevel L, unsigned N) {
    L = normalize(L, P.ell());
    for (auto& [s, p] : P.entries())
        for (auto& [e, c] : p.terms()) {
            if (L.m == 0 && L.i == 0) {
                if (!c.is_quasiconstant()) return false;
                for (unsigned x : e)
                    if (x + 1 > N) return false;
                continue;
            }
            for (auto& v : c.jets())
                if (!jet_le(v, L.m, L.i)) return false;
            for (unsigned r = 0; r < e.size(); ++r) {
                unsigned bound = s[r] <= L.i ? L.m + N : L.m + N - 1;
                if (e[r] > bound) return false;
            }
        }
    return true;
}

FiltrationLevel filtration_level(const SkewArray& P, unsigned N) {
    if (in_filtration(P, {0, 0}, N)) return {0, 0};
    unsigned top = 0;
    for (auto& [s, p] : P.entries()) {
        top = std::max(top, p.max_degree());
        for (auto& [e, c] : p.terms())
            for (auto& v : c.jets()) top = std::max(top, v.n);
    }
    for (unsigned m = 0; m <= top + 1; ++m)
        for (unsigned i = 1; i <= P.ell(); ++i)
            if (in_filtration(P, {m, i}, N)) return {m, i};
    throw std::logic_error("filtration level not found");
}

DiffPoly antiderivative(const DiffPoly& f, unsigned i, unsigned m) {
    for (auto& v : f.jets())
        if (!jet_le(v, m, i)) throw OutOfFiltration("integrand depends on jets above the filtration level");
    JetVar w{i, m};
    JetMono step;
    step.f.push_back({w, 1});
    DiffPoly out;
    for (auto& [mono, c] : f.terms()) {
        unsigned e = mono.degree_in(w);
        out.add_term(mono * step, c * FieldElem(Rat(1) / Rat(e + 1)));
    }
    return out;
}

SkewArray homotopy(const SkewArray& P, FiltrationLevel L, unsigned N) {
    unsigned ell = P.ell();
    L = normalize(L, ell);
    if (P.arity() == 0) throw ShapeMismatch("homotopy needs arity at least 1");
    if (L.i == 0) throw OutOfFiltration("no homotopy at level (0,0)");
    if (!in_filtration(P, L, N)) throw OutOfFiltration("array is not in the requested filtration level");
    unsigned k = P.arity() - 1;
    SkewArray out(k, ell);
    unsigned top = L.m + N;
    for (auto& t : SkewArray::sorted_keys(k, ell)) {
        Index full{L.i};
        full.insert(full.end(), t.begin(), t.end());
        LPoly p = P.at(full);
        LPoly q(k);
        for (auto& [e, c] : p.terms()) {
            if (e[0] != top) continue;
            Exps x(e.begin() + 1, e.end());
            q.add_term(x, antiderivative(c, L.i, L.m));
        }
        out.set(t, q);
    }
    return out;
}

SkewArray phi_S(const SkewArray& P, const MatFieldOp& S) {
    unsigned k = P.arity(), ell = P.ell();
    if (S.rows() != ell || S.cols() != ell) throw ShapeMismatch("S does not match the number of components");
    if (k == 0) return P;
    SkewArray out(k, ell);
    // all index tuples
    std::vector<Index> tuples;
    Index cur(k, 1);
    while (true) {
        tuples.push_back(cur);
        int p = static_cast<int>(k) - 1;
        while (p >= 0 && cur[p] == ell) cur[p--] = 1;
        if (p < 0) break;
        ++cur[p];
    }
    for (auto& s : SkewArray::sorted_keys(k, ell)) {
        LPoly acc(k);
        for (auto& j : tuples) {
            bool skip = false;
            for (unsigned a = 0; a < k; ++a)
                if (S.at(j[a] - 1, s[a] - 1).is_zero()) skip = true;
            if (skip) continue;
            LPoly Pj = P.at(j);
            for (auto& [e, c] : Pj.terms()) {
                LPoly prod = LPoly::constant(k, c);
                for (unsigned a = 0; a < k; ++a) {
                    LPoly f = LPoly::constant(k, DiffPoly(S.at(j[a] - 1, s[a] - 1).coeff(0)));
                    prod = prod * f.apply_power(shifted_var(k, a), e[a]);
                }
                acc += prod;
            }
        }
        out.set(s, acc);
    }
    return out;
}

MatFieldOp mat_inverse(const MatFieldOp& A) {
    std::size_t n = A.rows();
    if (!A.square()) throw ShapeMismatch("matrix is not square");
    if (A.order() > 0) throw ShapeMismatch("matrix is not of order zero");
    std::vector<std::vector<RatFunc>> a(n, std::vector<RatFunc>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = A.at(i, j).coeff(0);
        a[i][n + i] = RatFunc(1);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw LeadingCoeffSingular("leading coefficient is not invertible");
        std::swap(a[p], a[c]);
        RatFunc inv = a[c][c].inverse();
        for (auto& x : a[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            RatFunc f = a[r][c];
            for (std::size_t q = 0; q < 2 * n; ++q) a[r][q] -= f * a[c][q];
        }
    }
    MatFieldOp out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = FieldOp(a[i][n + j]);
    return out;
}

namespace {

MatFieldOp leading_coefficient(const MatFieldOp& K) {
    int N = K.order();
    MatFieldOp L(K.rows(), K.cols());
    for (std::size_t i = 0; i < K.rows(); ++i)
        for (std::size_t j = 0; j < K.cols(); ++j) L.at(i, j) = FieldOp(K.at(i, j).coeff(static_cast<unsigned>(N)));
    return L;
}

bool is_identity(const MatFieldOp& A) { return A == MatFieldOp::identity(A.rows()); }

unsigned order_of(const MatFieldOp& K) {
    if (!K.square()) throw ShapeMismatch("K must be square");
    int N = K.order();
    if (N < 1) throw DegenerateShape("K must have positive order");
    return static_cast<unsigned>(N);
}

}  // namespace

ClosedReduction reduce_closed(const SkewArray& P, const MatFieldOp& K) {
    unsigned N = order_of(K);
    if (!delta_K(P, K).is_zero()) throw NotClosed("delta_K P is not zero");
    MatFieldOp KN = leading_coefficient(K);
    MatFieldOp S = mat_inverse(KN);
    unsigned k = P.arity();
    if (k == 0) return {SkewArray(0, P.ell()), P};
    MatFieldOp K1 = K * S;
    SkewArray R = phi_S(P, S);
    SkewArray Q(k - 1, P.ell());
    FiltrationLevel L = filtration_level(R, N);
    while (L != FiltrationLevel{0, 0}) {
        SkewArray h = homotopy(R, L, N);
        Q += h;
        R -= delta_K(h, K1);
        FiltrationLevel next = filtration_level(R, N);
        if (!(next < L)) throw std::logic_error("homotopy sweep did not lower the filtration level");
        L = next;
    }
    if (is_identity(KN)) return {Q, R};
    return {phi_S(Q, KN), phi_S(R, KN)};
}

ClosedReduction reduce_closed(const SkewArray& P, const MatDiffOp& K) { return reduce_closed(P, quasiconstant_part(K)); }

SkewArray alpha_k(const SkewArray& C, const MatFieldOp& K) {
    unsigned N = order_of(K);
    if (!is_identity(leading_coefficient(K))) throw LeadingCoeffNotIdentity("leading coefficient of K must be the identity");
    SkewArray X = partial_action(C);
    if (C.arity() == 0) return X;
    for (unsigned i = C.ell(); i >= 1; --i) X -= delta_K(homotopy(X, {0, i}, N), K);
    return X;
}

unsigned long binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    unsigned long r = 1;
    for (unsigned long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

unsigned long dim_omega00(unsigned N, unsigned ell, unsigned k) { return binomial(static_cast<unsigned long>(N) * ell, k); }

Omega00Basis omega00_basis(unsigned N, unsigned ell, unsigned k) {
    Omega00Basis B;
    for (auto& s : SkewArray::sorted_keys(k, ell)) {
        // blocks of equal indices
        std::vector<std::pair<unsigned, unsigned>> blocks;
        for (unsigned r = 0; r < k;) {
            unsigned q = r;
            while (q < k && s[q] == s[r]) ++q;
            blocks.push_back({r, q - r});
            r = q;
        }
        // strictly increasing exponent runs per block, odometer over blocks
        std::vector<std::vector<std::vector<unsigned>>> choices;
        bool empty = false;
        for (auto& [start, len] : blocks) {
            std::vector<std::vector<unsigned>> c;
            if (len <= N) {
                std::vector<unsigned> v(len);
                std::iota(v.begin(), v.end(), 0u);
                while (true) {
                    c.push_back(v);
                    int p = static_cast<int>(len) - 1;
                    while (p >= 0 && v[p] == N - len + p) --p;
                    if (p < 0) break;
                    ++v[p];
                    for (unsigned q = p + 1; q < len; ++q) v[q] = v[q - 1] + 1;
                }
            }
            if (c.empty()) empty = true;
            choices.push_back(std::move(c));
        }
        if (empty) continue;
        std::vector<std::size_t> pick(blocks.size(), 0);
        while (true) {
            Exps e(k, 0);
            for (std::size_t b = 0; b < blocks.size(); ++b)
                for (unsigned q = 0; q < blocks[b].second; ++q) e[blocks[b].first + q] = choices[b][pick[b]][q];
            LPoly mono(k);
            mono.add_term(e, DiffPoly(1));
            B.basis.push_back(SkewArray::antisymmetrize(k, ell, [&](const Index& t) { return t == s ? mono : LPoly(k); }));
            B.pivots.push_back({s, e});
            std::size_t b = 0;
            while (b < blocks.size() && ++pick[b] == choices[b].size()) pick[b++] = 0;
            if (b == blocks.size()) break;
        }
    }
    return B;
}

std::vector<RatFunc> omega00_coords(const Omega00Basis& B, const SkewArray& P) {
    std::vector<RatFunc> c(B.basis.size());
    SkewArray check(P.arity(), P.ell());
    for (std::size_t r = 0; r < B.basis.size(); ++r) {
        auto& [s, e] = B.pivots[r];
        DiffPoly v = P.stored(s).coeff(e);
        if (v.is_zero()) continue;
        if (!v.is_quasiconstant()) throw OutOfFiltration("array is not in tilde Omega_{0,0}");
        c[r] = v.quasiconstant_part() / B.basis[r].stored(s).coeff(e).quasiconstant_part();
        check += DiffPoly(c[r]) * B.basis[r];
    }
    if (check != P) throw OutOfFiltration("array is not in tilde Omega_{0,0}");
    return c;
}

CohomologyResult cohomology_dim(const MatFieldOp& K, unsigned k, int degree_bound) {
    unsigned N = order_of(K);
    unsigned ell = static_cast<unsigned>(K.rows());
    MatFieldOp KN = leading_coefficient(K);
    MatFieldOp S = mat_inverse(KN);
    MatFieldOp K1 = K * S;
    Omega00Basis B = omega00_basis(N, ell, k + 1);
    std::size_t D = B.basis.size();
    CohomologyResult res;
    if (D == 0) return res;

    // alpha(c B_r) = c' B_r + c alpha(B_r), so ker alpha is ker (d + A)
    std::vector<std::vector<RatFunc>> cols(D);
    std::exception_ptr err;
    long nd = static_cast<long>(D);
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
    for (long r = 0; r < nd; ++r) {
        try {
            cols[r] = omega00_coords(B, alpha_k(B.basis[r], K1));
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    MatFieldOp M(D, D);
    for (std::size_t r = 0; r < D; ++r) {
        M.at(r, r) = FieldOp::d();
        for (std::size_t s = 0; s < D; ++s)
            if (!cols[s][r].is_zero()) M.at(r, s) += FieldOp(cols[s][r]);
    }
    RationalSolution sol = solve_rational(M, std::vector<RatFunc>(D), degree_bound);
    res.dim = static_cast<unsigned>(sol.basis.size());
    res.lower_bound = !sol.complete;
    for (auto& c : sol.basis) {
        SkewArray C(k + 1, ell);
        for (std::size_t r = 0; r < D; ++r)
            if (!c[r].is_zero()) C += DiffPoly(c[r]) * B.basis[r];
        if (!is_identity(KN)) C = phi_S(C, KN);
        res.kernel.push_back(C);
        res.representatives.push_back(reduce_closed(partial_action(C), K).Q);
    }
    return res;
}

MatDiffOp phi_K1(const MatDiffOp& S, const Hamiltonian& K) {
    if (S.adjoint() != -S) throw NotSkewadjoint("S(d) is not skewadjoint");
    return -(K.H * S * K.H);
}

}  // namespace vp
