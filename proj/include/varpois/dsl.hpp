#pragma once

#include <map>
#include <string>
#include <vector>

#include "varpois/complexes.hpp"
#include "varpois/polydiff.hpp"

namespace vp {

// Polynomial in commuting lambda variables with operator coefficients.
// Plain differential polynomials, operators and lambda-polynomials are all special cases.
class Value {
public:
    using Exps = std::vector<unsigned>;  // no trailing zeros

    Value() = default;
    Value(const DiffOp& p);
    Value(const DiffPoly& p) : Value(DiffOp(p)) {}
    static Value lambda(unsigned k);

    const std::map<Exps, DiffOp>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool has_lambda() const;
    bool has_d() const;
    unsigned lambda_count() const;

    Value operator-() const;
    Value& operator+=(const Value& o);
    Value& operator-=(const Value& o);
    friend Value operator+(Value a, const Value& b) { return a += b; }
    friend Value operator-(Value a, const Value& b) { return a -= b; }
    friend Value operator*(const Value& a, const Value& b);
    Value pow(unsigned e) const;

    DiffOp to_diffop() const;     // throws ParseError when lambdas occur
    DiffPoly to_diffpoly() const; // throws ParseError when d or lambdas occur
    LPoly to_lpoly(unsigned nv) const;

private:
    void add(const Exps& e, const DiffOp& c);
    std::map<Exps, DiffOp> t_;
};

struct Session {
    unsigned ell = 1;
    std::vector<std::string> params;
    std::map<std::string, Value> scalars;
    std::map<std::string, std::vector<std::vector<Value>>> matrices;
    std::map<std::string, std::map<Index, Value>> arrays;

    bool has_operator(const std::string& name) const { return scalars.count(name) || matrices.count(name); }
};

// file := stmt*, statements separated by newlines or ';', '#' starts a comment
//   vars INT | params ident+ | ident = expr | ident = [[..],..] | ident[i,..] = expr
Session parse_session(const std::string& src, Session base = {});
Value parse_expr(const std::string& src, const Session& s);
DiffPoly parse_diffpoly(const std::string& src, const Session& s);
// a defined name, a matrix literal or a scalar expression
MatDiffOp parse_operator(const std::string& src, const Session& s);
MatDiffOp to_matrix(const std::vector<std::vector<Value>>& rows);

// skew arrays are given on nondecreasing index tuples, k-differential operators on any tuples
SkewArray session_array(const Session& s, const std::string& name);
KDiffOp session_kdiff(const Session& s, const std::string& name);

}  // namespace vp
