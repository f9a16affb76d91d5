#include "varpois/polydiff.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "varpois/errors.hpp"
#include "varpois/linalg.hpp"

namespace vp {

LPoly KDiffOp::at(const Index& t) const {
    auto it = e_.find(t);
    return it == e_.end() ? LPoly(k_) : it->second;
}

void KDiffOp::set(const Index& t, const LPoly& p) {
    if (t.size() != k_ + 1) throw ShapeMismatch("index tuple has wrong length");
    if (p.is_zero())
        e_.erase(t);
    else
        e_[t] = p;
}

void KDiffOp::add(const Index& t, const LPoly& p) {
    if (p.is_zero()) return;
    auto it = e_.find(t);
    if (it == e_.end()) return set(t, p);
    it->second += p;
    if (it->second.is_zero()) e_.erase(it);
}

KDiffOp KDiffOp::operator-() const {
    KDiffOp r = *this;
    for (auto& [t, p] : r.e_) p = -p;
    return r;
}

KDiffOp& KDiffOp::operator+=(const KDiffOp& o) {
    if (o.k_ != k_) throw ShapeMismatch("operators have different arity");
    for (auto& [t, p] : o.e_) add(t, p);
    return *this;
}

KDiffOp& KDiffOp::operator-=(const KDiffOp& o) { return *this += -o; }

KDiffOp& KDiffOp::operator*=(const DiffPoly& c) {
    std::map<Index, LPoly> n;
    for (auto& [t, p] : e_) {
        LPoly q = p * c;
        if (!q.is_zero()) n.emplace(t, std::move(q));
    }
    e_ = std::move(n);
    return *this;
}

unsigned KDiffOp::max_degree() const {
    unsigned d = 0;
    for (auto& [t, p] : e_) d = std::max(d, p.max_degree());
    return d;
}

std::vector<Index> KDiffOp::all_tuples(unsigned n, unsigned ell) {
    std::vector<Index> out;
    Index cur(n, 1);
    if (ell == 0) return out;
    while (true) {
        out.push_back(cur);
        int p = static_cast<int>(n) - 1;
        while (p >= 0 && cur[p] == ell) cur[p--] = 1;
        if (p < 0) break;
        ++cur[p];
    }
    return out;
}

KDiffOp KDiffOp::from_matrix(const MatFieldOp& m) {
    if (!m.square()) throw ShapeMismatch("matrix must be square");
    KDiffOp P(1, static_cast<unsigned>(m.rows()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            LPoly p(1);
            for (auto& [n, c] : m.at(i, j).coeffs()) p.add_term({n}, DiffPoly(c));
            P.set({static_cast<unsigned>(i + 1), static_cast<unsigned>(j + 1)}, p);
        }
    return P;
}

MatFieldOp KDiffOp::to_matrix() const {
    if (k_ != 1) throw ShapeMismatch("only 1-differential operators are matrices");
    MatFieldOp m(ell_, ell_);
    for (auto& [t, p] : e_)
        for (auto& [e, c] : p.terms()) m.at(t[0] - 1, t[1] - 1).add_term(e[0], c.quasiconstant_part());
    return m;
}

std::string KDiffOp::str() const {
    if (e_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [t, p] : e_) {
        if (!first) os << "; ";
        first = false;
        os << "P_";
        for (std::size_t r = 0; r < t.size(); ++r) os << (r ? "," : "") << t[r];
        os << " = " << p.str();
    }
    return os.str();
}

Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

int sign(const Perm& p) {
    int s = 1;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) s = -s;
    return s;
}

KDiffOp sigma_action(const KDiffOp& P, const Perm& sigma) {
    unsigned k = P.arity();
    if (sigma.size() != k + 1) throw ShapeMismatch("permutation has wrong size");
    Perm inv(k + 1);
    for (unsigned r = 0; r <= k; ++r) inv[sigma[r]] = r;
    std::vector<LinForm> forms;
    for (unsigned r = 1; r <= k; ++r) {
        if (inv[r] == 0)
            forms.push_back(LinForm{std::vector<long>(k, -1), -1});
        else
            forms.push_back(LinForm::var(k, inv[r] - 1));
    }
    KDiffOp out(k, P.ell());
    for (auto& [t, p] : P.entries()) {
        // t is the source tuple; the output tuple i satisfies i[inv[r]] = t[r]
        Index i(k + 1);
        for (unsigned r = 0; r <= k; ++r) i[inv[r]] = t[r];
        out.set(i, p.substitute(k, forms));
    }
    return out;
}

namespace {

Perm identity_perm(unsigned n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

Perm transposition(unsigned n, unsigned a, unsigned b) {
    Perm p = identity_perm(n);
    std::swap(p[a], p[b]);
    return p;
}

}  // namespace

bool is_skewsymmetric(const KDiffOp& P) {
    unsigned k = P.arity();
    for (unsigned a = 1; a + 1 <= k; ++a)
        if (sigma_action(P, transposition(k + 1, a, a + 1)) != -P) return false;
    return true;
}

bool is_totally_skewsymmetric(const KDiffOp& P) {
    if (!is_skewsymmetric(P)) return false;
    return P.arity() == 0 || sigma_action(P, transposition(P.arity() + 1, 0, 1)) == -P;
}

KDiffOp total_skewsymmetrize(const KDiffOp& P) {
    unsigned k = P.arity();
    KDiffOp acc(k, P.ell());
    Perm p = identity_perm(k + 1);
    Rat n(1);
    do {
        KDiffOp q = sigma_action(P, p);
        if (sign(p) < 0)
            acc -= q;
        else
            acc += q;
    } while (std::next_permutation(p.begin(), p.end()));
    for (unsigned t = 2; t <= k + 1; ++t) n *= Rat(t);
    return DiffPoly(Rat(1) / n) * acc;
}

KDiffOp total_skewsymmetrize_skew(const KDiffOp& P) {
    unsigned k = P.arity();
    KDiffOp acc = P;
    for (unsigned a = 1; a <= k; ++a) acc -= sigma_action(P, transposition(k + 1, 0, a));
    return DiffPoly(Rat(1, k + 1)) * acc;
}

KDiffOp module_action(const MatFieldOp& K, const KDiffOp& P) {
    unsigned k = P.arity(), ell = P.ell();
    if (K.rows() != ell || K.cols() != ell) throw ShapeMismatch("K does not match the number of components");
    KDiffOp out(k, ell);
    std::vector<LinForm> forms{LinForm{std::vector<long>(k, 1), 1}};
    for (auto& [t, p] : P.entries()) {
        unsigned j = t[0];
        for (unsigned i0 = 1; i0 <= ell; ++i0) {
            auto& op = K.at(i0 - 1, j - 1);
            if (op.is_zero()) continue;
            LPoly sym(1);
            for (auto& [n, c] : op.coeffs()) sym.add_term({n}, DiffPoly(c));
            Index i = t;
            i[0] = i0;
            out.add(i, sym.act_on(forms, p));
        }
    }
    return out;
}

KDiffOp module_action(const MatDiffOp& K, const KDiffOp& P) { return module_action(quasiconstant_part(K), P); }

std::vector<DiffPoly> kdiff_apply(const KDiffOp& P, const std::vector<std::vector<DiffPoly>>& F) {
    unsigned k = P.arity();
    if (F.size() != k) throw ArityError("wrong number of arguments");
    std::vector<DiffPoly> out(P.ell());
    for (auto& [t, p] : P.entries())
        for (auto& [e, c] : p.terms()) {
            DiffPoly term = c;
            for (unsigned a = 0; a < k; ++a) term = term * F[a].at(t[a + 1] - 1).derivative(e[a]);
            out[t[0] - 1] += term;
        }
    return out;
}

namespace {

std::mutex g_table_mutex;
std::map<Tuple, std::map<Tuple, Int>> g_c, g_b;

std::pair<unsigned, unsigned> top_two(const Tuple& n) {
    Tuple s = n;
    std::sort(s.rbegin(), s.rend());
    return {s[0], s[1]};
}

unsigned argmax(const Tuple& n) { return static_cast<unsigned>(std::max_element(n.begin(), n.end()) - n.begin()); }

void add_scaled(std::map<Tuple, Int>& acc, const std::map<Tuple, Int>& add, long s) {
    for (auto& [m, c] : add) {
        Int& v = acc[m];
        v += s * c;
        if (v == 0) acc.erase(m);
    }
}

const std::map<Tuple, Int>* lookup(std::map<Tuple, std::map<Tuple, Int>>& table, const Tuple& n) {
    std::lock_guard<std::mutex> g(g_table_mutex);
    auto it = table.find(n);
    return it == table.end() ? nullptr : &it->second;
}

const std::map<Tuple, Int>& store(std::map<Tuple, std::map<Tuple, Int>>& table, const Tuple& n, std::map<Tuple, Int> v) {
    std::lock_guard<std::mutex> g(g_table_mutex);
    return table.emplace(n, std::move(v)).first->second;
}

// n with entry a raised by one and entry b lowered by one (b may equal npos)
Tuple moved(const Tuple& n, int up, int down) {
    Tuple r = n;
    if (up >= 0) ++r[up];
    if (down >= 0) --r[down];
    return r;
}

void check_tuple(const Tuple& n) {
    if (n.size() < 2) throw ShapeMismatch("tuples need at least two entries");
}

}  // namespace

const std::map<Tuple, Int>& c_expansion(const Tuple& n) {
    check_tuple(n);
    if (auto p = lookup(g_c, n)) return *p;
    auto [v0, v1] = top_two(n);
    std::map<Tuple, Int> r;
    if (v0 == v1 + 1) {
        r[n] = 1;
    } else if (v0 >= v1 + 2) {
        int a = static_cast<int>(argmax(n));
        for (int b = 0; b < static_cast<int>(n.size()); ++b)
            if (b != a) add_scaled(r, c_expansion(moved(n, b, a)), -1);
        add_scaled(r, c_expansion(moved(n, -1, a)), -1);
    } else {
        for (int a = 0; a < static_cast<int>(n.size()); ++a) add_scaled(r, c_expansion(moved(n, a, -1)), -1);
    }
    return store(g_c, n, std::move(r));
}

const std::map<Tuple, Int>& b_expansion(const Tuple& n) {
    check_tuple(n);
    if (auto p = lookup(g_b, n)) return *p;
    auto [v0, v1] = top_two(n);
    std::map<Tuple, Int> r;
    if (v0 <= v1 + 1) {
        r[n] = 1;
    } else {
        int a = static_cast<int>(argmax(n));
        for (int b = 0; b < static_cast<int>(n.size()); ++b)
            if (b != a) add_scaled(r, b_expansion(moved(n, b, a)), -1);
        add_scaled(r, b_expansion(moved(n, -1, a)), -1);
    }
    return store(g_b, n, std::move(r));
}

void clear_coefficient_tables() {
    std::lock_guard<std::mutex> g(g_table_mutex);
    g_c.clear();
    g_b.clear();
}

Int coeff_c(const Tuple& n, const Tuple& m) {
    check_tuple(n);
    if (m.size() != n.size()) throw ShapeMismatch("tuples have different lengths");
    auto [m0, m1] = top_two(m);
    if (m0 != m1 + 1) throw BadSupport("c coefficients need mu_0 - mu_1 = 1");
    auto& e = c_expansion(n);
    auto it = e.find(m);
    return it == e.end() ? Int(0) : it->second;
}

Int coeff_b(const Tuple& n, const Tuple& m) {
    check_tuple(n);
    if (m.size() != n.size()) throw ShapeMismatch("tuples have different lengths");
    auto [m0, m1] = top_two(m);
    if (m0 > m1 + 1) throw BadSupport("b coefficients need mu_0 - mu_1 in {0, 1}");
    auto& e = b_expansion(n);
    auto it = e.find(m);
    return it == e.end() ? Int(0) : it->second;
}

std::vector<ExpansionTerm> expand_monomial(const Tuple& n) {
    std::vector<ExpansionTerm> out;
    long sn = std::accumulate(n.begin(), n.end(), 0L);
    for (auto& [m, c] : c_expansion(n)) {
        long sm = std::accumulate(m.begin(), m.end(), 0L);
        out.push_back({m, c, sn - sm});
    }
    return out;
}

namespace {

// skewsymmetric operators of degree <= D in each variable, a basis over F
std::vector<KDiffOp> skew_basis(unsigned ell, unsigned k, unsigned D) {
    std::vector<KDiffOp> out;
    Omega00Basis B = omega00_basis(D + 1, ell, k);
    auto tuples = KDiffOp::all_tuples(k, ell);
    for (unsigned i0 = 1; i0 <= ell; ++i0)
        for (auto& b : B.basis) {
            KDiffOp P(k, ell);
            for (auto& t : tuples) {
                Index i{i0};
                i.insert(i.end(), t.begin(), t.end());
                P.set(i, b.at(t));
            }
            out.push_back(P);
        }
    return out;
}

// (k+1) <K o P>^- for skewsymmetric P
KDiffOp skew_lhs(const MatFieldOp& K, const KDiffOp& P) {
    KDiffOp X = module_action(K, P);
    unsigned k = P.arity();
    KDiffOp acc = X;
    for (unsigned a = 1; a <= k; ++a) acc -= sigma_action(X, transposition(k + 1, 0, a));
    return acc;
}

std::vector<DiffPoly> coefficient_equations(const KDiffOp& E) {
    std::vector<DiffPoly> eqs;
    for (auto& [t, p] : E.entries())
        for (auto& [e, c] : p.terms()) eqs.push_back(c);
    return eqs;
}

struct SkewSolve {
    std::vector<KDiffOp> basis;
    RationalSolution sol;
    bool consistent = true;
};

SkewSolve solve_skew_system(const MatFieldOp& K, const KDiffOp& S, unsigned D, int degree_bound, bool total = false) {
    unsigned k = S.arity(), ell = S.ell();
    SkewSolve out;
    out.basis = skew_basis(ell, k, D);
    unsigned R = static_cast<unsigned>(out.basis.size());
    KDiffOp P(k, ell);
    for (unsigned r = 0; r < R; ++r) P += DiffPoly::jet(r + 1) * out.basis[r];
    std::vector<DiffPoly> eqs = coefficient_equations(skew_lhs(K, P) - S);
    if (total)
        for (auto& e : coefficient_equations(total_skewsymmetrize(P) - P)) eqs.push_back(e);
    LinearDiffSystem L = linearize(eqs, R);
    if (eqs.empty()) {
        L.m = MatFieldOp(1, R);
        L.b = {RatFunc()};
    }
    out.sol = solve_rational(L.m, L.b, degree_bound);
    return out;
}

KDiffOp assemble(const std::vector<KDiffOp>& basis, const std::vector<RatFunc>& c) {
    KDiffOp P = basis.empty() ? KDiffOp() : KDiffOp(basis[0].arity(), basis[0].ell());
    for (std::size_t r = 0; r < basis.size(); ++r)
        if (!c[r].is_zero()) P += DiffPoly(c[r]) * basis[r];
    return P;
}

unsigned order_of(const MatFieldOp& K) {
    if (!K.square()) throw ShapeMismatch("K must be square");
    int N = K.order();
    if (N < 0) throw DegenerateShape("K is zero");
    MatFieldOp lead(K.rows(), K.cols());
    for (std::size_t i = 0; i < K.rows(); ++i)
        for (std::size_t j = 0; j < K.cols(); ++j) lead.at(i, j) = FieldOp(K.at(i, j).coeff(static_cast<unsigned>(N)));
    mat_inverse(lead);
    return static_cast<unsigned>(N);
}

}  // namespace

SigmaSpace sigma_space(const MatFieldOp& K, unsigned k, int degree_bound) {
    unsigned N = order_of(K);
    unsigned ell = static_cast<unsigned>(K.rows());
    SigmaSpace out;
    out.expected = binomial(static_cast<unsigned long>(N) * ell, k + 1);
    if (N == 0) return out;
    MatFieldOp Ks = K.adjoint();
    SkewSolve s = solve_skew_system(Ks, KDiffOp(k, ell), N - 1, degree_bound);
    for (auto& c : s.sol.basis) out.basis.push_back(assemble(s.basis, c));
    out.lower_bound = out.basis.size() < out.expected;
    return out;
}

bool in_sigma(const MatFieldOp& K, const KDiffOp& P) {
    unsigned N = order_of(K);
    if (!is_skewsymmetric(P)) return false;
    for (auto& [t, p] : P.entries()) {
        if (N == 0) return false;
        for (unsigned v = 0; v < P.arity(); ++v)
            if (p.degree_in(v) > N - 1) return false;
        for (auto& [e, c] : p.terms())
            if (!c.is_quasiconstant()) return false;
    }
    return skew_lhs(K.adjoint(), P).is_zero();
}

KDiffOp solve_skew_equation(const MatFieldOp& K, const KDiffOp& S, int degree_bound) {
    unsigned N = order_of(K);
    if (K.rows() != S.ell()) throw ShapeMismatch("K does not match the number of components");
    if (!is_totally_skewsymmetric(S)) throw NotSkewadjoint("S is not totally skewsymmetric");
    if (S.is_zero()) return KDiffOp(S.arity(), S.ell());
    unsigned D = std::max(S.max_degree() + N, N > 0 ? N - 1 : 0u);
    try {
        SkewSolve s = solve_skew_system(K, S, D, degree_bound, true);
        return assemble(s.basis, s.sol.particular);
    } catch (const NoRationalSolution&) {
    } catch (const Incomplete&) {
    }
    SkewSolve s = solve_skew_system(K, S, D, degree_bound);
    return assemble(s.basis, s.sol.particular);
}

SkewArray chi_representative(const MatFieldOp& K, const KDiffOp& P) {
    if (!in_sigma(K, P)) throw NotInSigma("operator is not in Sigma_k(K*)");
    unsigned k = P.arity(), ell = P.ell();
    SkewArray out(k, ell);
    for (auto& t : SkewArray::sorted_keys(k, ell)) {
        LPoly acc(k);
        for (unsigned j = 1; j <= ell; ++j) {
            Index i{j};
            i.insert(i.end(), t.begin(), t.end());
            acc += P.at(i) * DiffPoly::jet(j);
        }
        out.set(t, acc);
    }
    return out;
}

}  // namespace vp
