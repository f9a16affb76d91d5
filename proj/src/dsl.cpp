#include "varpois/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "varpois/errors.hpp"
#include "varpois/symbols.hpp"

namespace vp {

namespace {

Value::Exps trimmed(Value::Exps e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
}

}  // namespace

Value::Value(const DiffOp& p) {
    if (!p.is_zero()) t_.emplace(Exps{}, p);
}

Value Value::lambda(unsigned k) {
    Exps e(k + 1, 0);
    e[k] = 1;
    Value v;
    v.t_.emplace(e, DiffOp(DiffPoly(1)));
    return v;
}

bool Value::has_lambda() const {
    for (auto& [e, c] : t_)
        if (!e.empty()) return true;
    return false;
}

bool Value::has_d() const {
    for (auto& [e, c] : t_)
        if (c.order() > 0) return true;
    return false;
}

unsigned Value::lambda_count() const {
    std::size_t n = 0;
    for (auto& [e, c] : t_) n = std::max(n, e.size());
    return static_cast<unsigned>(n);
}

void Value::add(const Exps& e, const DiffOp& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.emplace(e, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Value Value::operator-() const {
    Value r;
    for (auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
}

Value& Value::operator+=(const Value& o) {
    for (auto& [e, c] : o.t_) add(e, c);
    return *this;
}

Value& Value::operator-=(const Value& o) {
    for (auto& [e, c] : o.t_) add(e, -c);
    return *this;
}

Value operator*(const Value& a, const Value& b) {
    Value r;
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) {
            Value::Exps e(std::max(ea.size(), eb.size()), 0);
            for (std::size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
            for (std::size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
            r.add(trimmed(e), ca * cb);
        }
    return r;
}

Value Value::pow(unsigned e) const {
    Value r(DiffOp(DiffPoly(1)));
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
}

DiffOp Value::to_diffop() const {
    if (has_lambda()) throw ParseError("lambda variables are not allowed in an operator");
    auto it = t_.find(Exps{});
    return it == t_.end() ? DiffOp() : it->second;
}

DiffPoly Value::to_diffpoly() const {
    DiffOp p = to_diffop();
    if (p.order() > 0) throw ParseError("d is not allowed in a differential polynomial");
    return p.coeff(0);
}

LPoly Value::to_lpoly(unsigned nv) const {
    LPoly out(nv);
    for (auto& [e, c] : t_) {
        if (e.size() > nv) throw ParseError("lambda variable beyond the arity of the entry");
        if (c.order() > 0) throw ParseError("d is not allowed in a lambda polynomial");
        Exps full = e;
        full.resize(nv, 0);
        out.add_term(full, c.coeff(0));
    }
    return out;
}

namespace {

struct Token {
    enum Kind { Num, Ident, Sym, Newline, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t p = 0;
    auto push = [&](Token::Kind k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
    while (p < src.size()) {
        char ch = src[p];
        if (ch == '#') {
            while (p < src.size() && src[p] != '\n') ++p;
            continue;
        }
        if (ch == '\n' || ch == ';') {
            push(Token::Newline, std::string(1, ch), col);
            ++p;
            if (ch == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++p;
            ++col;
            continue;
        }
        int c0 = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t q = p;
            while (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) ++q;
            push(Token::Num, src.substr(p, q - p), c0);
            col += static_cast<int>(q - p);
            p = q;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t q = p;
            while (q < src.size() && (std::isalnum(static_cast<unsigned char>(src[q])) || src[q] == '_')) ++q;
            push(Token::Ident, src.substr(p, q - p), c0);
            col += static_cast<int>(q - p);
            p = q;
            continue;
        }
        if (std::string("+-*/^()[],='").find(ch) != std::string::npos) {
            push(Token::Sym, std::string(1, ch), c0);
            ++p;
            ++col;
            continue;
        }
        std::ostringstream os;
        os << "line " << line << ", column " << col << ": unexpected character '" << ch << "'";
        throw ParseError(os.str());
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// u, u3, u_3
std::optional<unsigned> jet_index(const std::string& s) {
    if (s == "u") return 1u;
    if (s.size() > 1 && s[0] == 'u') {
        std::string rest = s.substr(s[1] == '_' ? 2 : 1);
        if (all_digits(rest)) return static_cast<unsigned>(std::stoul(rest));
    }
    return std::nullopt;
}

// lambda, mu, l, lambda3, l3, l_3
std::optional<unsigned> lambda_index(const std::string& s) {
    if (s == "lambda" || s == "l") return 0u;
    if (s == "mu") return 1u;
    for (std::string pre : {"lambda_", "lambda", "l_", "l"})
        if (s.size() > pre.size() && s.compare(0, pre.size(), pre) == 0 && all_digits(s.substr(pre.size()))) {
            unsigned k = static_cast<unsigned>(std::stoul(s.substr(pre.size())));
            if (k == 0) return std::nullopt;
            return k - 1;
        }
    return std::nullopt;
}

bool reserved(const std::string& s) {
    return s == "d" || s == "x" || s == "vars" || s == "params" || jet_index(s) || lambda_index(s);
}

class Parser {
public:
    Parser(const std::string& src, Session& s) : toks_(lex(src)), s_(s) {}

    void session() {
        while (true) {
            skip_newlines();
            if (peek().kind == Token::End) return;
            statement();
            const Token& t = peek();
            if (t.kind != Token::Newline && t.kind != Token::End) fail(t, "expected end of statement");
        }
    }

    Value whole_expr() {
        Value v = expr();
        skip_newlines();
        if (peek().kind != Token::End) fail(peek(), "unexpected '" + peek().text + "'");
        return v;
    }

    std::vector<std::vector<Value>> whole_matrix() {
        auto m = matrix();
        skip_newlines();
        if (peek().kind != Token::End) fail(peek(), "unexpected '" + peek().text + "'");
        return m;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        std::ostringstream os;
        os << "line " << t.line << ", column " << t.col << ": " << msg;
        throw ParseError(os.str());
    }

private:
    const Token& peek(std::size_t ahead = 0) {
        std::size_t p = pos_;
        if (depth_ > 0)
            while (toks_[p].kind == Token::Newline) ++p;
        for (std::size_t a = 0; a < ahead; ++a) {
            ++p;
            if (depth_ > 0)
                while (toks_[p].kind == Token::Newline) ++p;
        }
        return toks_[std::min(p, toks_.size() - 1)];
    }
    Token next() {
        if (depth_ > 0)
            while (toks_[pos_].kind == Token::Newline) ++pos_;
        Token t = toks_[pos_];
        if (t.kind != Token::End) ++pos_;
        return t;
    }
    bool is_sym(const Token& t, char c) const { return t.kind == Token::Sym && t.text[0] == c; }
    Token expect(char c, const std::string& what) {
        Token t = next();
        if (!is_sym(t, c)) fail(t, "expected " + what);
        return t;
    }
    void skip_newlines() {
        while (toks_[pos_].kind == Token::Newline) ++pos_;
    }

    unsigned integer(const std::string& what) {
        Token t = next();
        if (t.kind != Token::Num) fail(t, "expected " + what);
        if (t.text.size() > 6) fail(t, "integer too large");
        return static_cast<unsigned>(std::stoul(t.text));
    }

    void statement() {
        Token head = next();
        if (head.kind != Token::Ident) fail(head, "expected a statement");
        if (head.text == "vars") {
            unsigned n = integer("number of components");
            if (n == 0) fail(head, "vars must be positive");
            s_.ell = n;
            return;
        }
        if (head.text == "params") {
            bool any = false;
            while (peek().kind == Token::Ident) {
                Token p = next();
                if (reserved(p.text)) fail(p, "'" + p.text + "' is reserved");
                intern_param(p.text);
                if (std::find(s_.params.begin(), s_.params.end(), p.text) == s_.params.end()) s_.params.push_back(p.text);
                any = true;
            }
            if (!any) fail(peek(), "expected parameter names");
            return;
        }
        if (reserved(head.text)) fail(head, "'" + head.text + "' is reserved");
        if (is_sym(peek(), '[')) {
            next();
            Index idx;
            if (!is_sym(peek(), ']')) {
                idx.push_back(integer("index"));
                while (is_sym(peek(), ',')) {
                    next();
                    idx.push_back(integer("index"));
                }
            }
            expect(']', "']'");
            expect('=', "'='");
            s_.arrays[head.text][idx] = expr();
            return;
        }
        expect('=', "'='");
        s_.scalars.erase(head.text);
        s_.matrices.erase(head.text);
        if (is_sym(peek(), '['))
            s_.matrices[head.text] = matrix();
        else
            s_.scalars[head.text] = expr();
    }

    std::vector<std::vector<Value>> matrix() {
        std::vector<std::vector<Value>> rows;
        Token open = expect('[', "'['");
        ++depth_;
        do {
            if (!rows.empty()) next();
            std::vector<Value> row;
            Token ro = peek();
            if (!is_sym(ro, '[')) fail(ro, "expected a row '['");
            next();
            row.push_back(expr());
            while (is_sym(peek(), ',')) {
                next();
                row.push_back(expr());
            }
            if (!is_sym(peek(), ']')) fail(ro, "unclosed '['");
            next();
            if (!rows.empty() && row.size() != rows[0].size()) fail(ro, "rows have different lengths");
            rows.push_back(std::move(row));
        } while (is_sym(peek(), ','));
        if (!is_sym(peek(), ']')) fail(open, "unclosed '['");
        --depth_;
        next();
        return rows;
    }

    Value expr() {
        Value v = term();
        while (is_sym(peek(), '+') || is_sym(peek(), '-')) {
            bool plus = next().text == "+";
            Value w = term();
            if (plus)
                v += w;
            else
                v -= w;
        }
        return v;
    }

    Value term() {
        Value v = unary();
        while (is_sym(peek(), '*') || is_sym(peek(), '/')) {
            Token op = next();
            Value w = unary();
            if (op.text == "*") {
                v = v * w;
                continue;
            }
            if (w.has_lambda() || w.has_d()) fail(op, "division by an operator");
            DiffPoly c = w.to_diffpoly();
            if (c.is_zero()) fail(op, "division by zero");
            if (!c.is_quasiconstant()) fail(op, "division by a non-quasiconstant");
            v = v * Value(DiffPoly(c.quasiconstant_part().inverse()));
        }
        return v;
    }

    Value unary() {
        if (is_sym(peek(), '-')) {
            next();
            return -unary();
        }
        if (is_sym(peek(), '+')) {
            next();
            return unary();
        }
        return power();
    }

    Value power() {
        Value v = primary();
        while (is_sym(peek(), '^')) {
            next();
            Token t = peek();
            unsigned e;
            if (is_sym(t, '(')) {
                next();
                e = integer("exponent");
                if (!is_sym(peek(), ')')) fail(t, "unclosed '('");
                next();
            } else {
                e = integer("exponent");
            }
            v = v.pow(e);
        }
        return v;
    }

    unsigned primes() {
        unsigned n = 0;
        while (is_sym(peek(), '\'')) {
            next();
            ++n;
        }
        return n;
    }

    // u^(n) after a jet or function symbol
    unsigned order_suffix() {
        unsigned n = primes();
        if (n == 0 && is_sym(peek(), '^') && is_sym(peek(1), '(')) {
            next();
            Token open = next();
            n = integer("derivative order");
            if (!is_sym(peek(), ')')) fail(open, "unclosed '('");
            next();
        }
        return n;
    }

    Value primary() {
        Token t = next();
        if (t.kind == Token::Num) return Value(DiffPoly(Rat(mpz_class(t.text))));
        if (is_sym(t, '(')) {
            ++depth_;
            Value v = expr();
            if (!is_sym(peek(), ')')) fail(t, "unclosed '('");
            --depth_;
            next();
            return v;
        }
        if (t.kind != Token::Ident) fail(t, t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        const std::string& id = t.text;
        if (id == "d") return Value(DiffOp::d());
        if (id == "x") return Value(DiffPoly(RatFunc::x()));
        if (auto i = jet_index(id)) {
            if (*i == 0 || *i > s_.ell) {
                std::ostringstream os;
                os << "line " << t.line << ", column " << t.col << ": jet index " << *i << " exceeds " << s_.ell;
                throw ArityError(os.str());
            }
            return Value(DiffPoly::jet(*i, order_suffix()));
        }
        if (auto k = lambda_index(id)) return Value::lambda(*k);
        if (std::find(s_.params.begin(), s_.params.end(), id) != s_.params.end())
            return Value(DiffPoly(RatFunc::var(param_var(intern_param(id)))));
        if (auto it = s_.scalars.find(id); it != s_.scalars.end()) return it->second;
        if (s_.matrices.count(id)) fail(t, "matrix '" + id + "' used inside an expression");
        // any other name is a function of x
        unsigned n = order_suffix();
        return Value(DiffPoly(RatFunc::var(func_var(intern_func(id), n))));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    Session& s_;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\n"), b = s.find_last_not_of(" \t\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

Session parse_session(const std::string& src, Session base) {
    Parser p(src, base);
    p.session();
    return base;
}

Value parse_expr(const std::string& src, const Session& s) {
    Session copy = s;
    Parser p(src, copy);
    return p.whole_expr();
}

DiffPoly parse_diffpoly(const std::string& src, const Session& s) { return parse_expr(src, s).to_diffpoly(); }

MatDiffOp to_matrix(const std::vector<std::vector<Value>>& rows) {
    if (rows.empty()) throw ShapeMismatch("empty matrix");
    MatDiffOp m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw ShapeMismatch("rows have different lengths");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j].to_diffop();
    }
    return m;
}

MatDiffOp parse_operator(const std::string& src, const Session& s) {
    std::string t = trim(src);
    if (auto it = s.matrices.find(t); it != s.matrices.end()) return to_matrix(it->second);
    if (auto it = s.scalars.find(t); it != s.scalars.end()) return MatDiffOp::scalar(it->second.to_diffop());
    Session copy = s;
    Parser p(t, copy);
    if (!t.empty() && t[0] == '[') return to_matrix(p.whole_matrix());
    return MatDiffOp::scalar(p.whole_expr().to_diffop());
}

namespace {

const std::map<Index, Value>& array_entries(const Session& s, const std::string& name) {
    auto it = s.arrays.find(name);
    if (it == s.arrays.end()) throw ParseError("no array named '" + name + "'");
    std::size_t len = it->second.begin()->first.size();
    for (auto& [idx, v] : it->second) {
        if (idx.size() != len) throw ParseError("entries of '" + name + "' have different numbers of indices");
        for (unsigned i : idx)
            if (i == 0 || i > s.ell) throw ArityError("index " + std::to_string(i) + " of '" + name + "' out of range");
    }
    return it->second;
}

}  // namespace

SkewArray session_array(const Session& s, const std::string& name) {
    auto& e = array_entries(s, name);
    unsigned k = static_cast<unsigned>(e.begin()->first.size());
    SkewArray out(k, s.ell);
    for (auto& [idx, v] : e) {
        if (!std::is_sorted(idx.begin(), idx.end())) throw ParseError("array entries must use nondecreasing indices");
        out.set(idx, v.to_lpoly(k));
    }
    if (!out.is_skew()) throw BadSupport("entries of '" + name + "' are not skew in repeated indices");
    return out;
}

KDiffOp session_kdiff(const Session& s, const std::string& name) {
    auto& e = array_entries(s, name);
    std::size_t len = e.begin()->first.size();
    if (len == 0) throw ParseError("a k-differential operator needs at least one index");
    unsigned k = static_cast<unsigned>(len - 1);
    KDiffOp out(k, s.ell);
    for (auto& [idx, v] : e) out.set(idx, v.to_lpoly(k));
    return out;
}

}  // namespace vp
