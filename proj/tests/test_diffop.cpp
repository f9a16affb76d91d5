#include "doctest.h"

#include "varpois/diffop.hpp"
#include "varpois/symbols.hpp"

using namespace vp;

namespace {
RatFunc fn(const std::string& name, unsigned n = 0) { return RatFunc::var(func_var(intern_func(name), n)); }
FieldOp D(unsigned n = 1) { return FieldOp::d(n); }
FieldOp C(const RatFunc& c) { return FieldOp(c); }

MatFieldOp mat2(FieldOp a, FieldOp b, FieldOp c, FieldOp d) {
    MatFieldOp m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}
}  // namespace

TEST_CASE("composition rule") {
    RatFunc a = fn("a");
    CHECK(D() * C(a) == C(a) * D() + C(fn("a", 1)));
    CHECK(D(2) * C(a) == C(a) * D(2) + C(RatFunc(2) * fn("a", 1)) * D() + C(fn("a", 2)));
}

TEST_CASE("adjoint anti-involution") {
    DiffOp ud = DiffOp::term(DiffPoly::jet(1), 1);
    CHECK(ud.adjoint() == DiffOp::term(-DiffPoly::jet(1), 1) + DiffOp(-DiffPoly::jet(1, 1)));
    FieldOp p = C(RatFunc::x()) * D(2) + C(fn("a")) * D() + C(RatFunc(3));
    FieldOp q = C(fn("b")) * D(3) + C(RatFunc::x() * RatFunc::x());
    CHECK((p * q).adjoint() == q.adjoint() * p.adjoint());
    CHECK(p.adjoint().adjoint() == p);
}

TEST_CASE("canonical forms round trip") {
    FieldOp p = C(fn("a")) * D(3) + C(RatFunc::x()) * D(2) + C(fn("b")) * D() + C(RatFunc(5));
    auto f = canonical_forms(p);
    CHECK(from_b_form(f.b) == p);
    CHECK(from_cd_form(f.c, f.d) == p);
    auto g = canonical_forms(C(fn("a")) * D());
    CHECK(g.b.at(1) == fn("a"));
    CHECK(g.b.at(0) == -fn("a", 1));
}

TEST_CASE("skewadjoint decomposition") {
    auto d1 = skewadjoint_decompose(MatFieldOp::scalar(D()));
    CHECK(d1.a.at(0).at(0, 0) == C(RatFunc(Rat(1, 2))));
    auto d3 = skewadjoint_decompose(MatFieldOp::scalar(D(3)));
    CHECK(d3.a.size() == 1);
    CHECK(d3.a.at(1).at(0, 0) == C(RatFunc(Rat(1, 2))));
    CHECK_THROWS_AS(skewadjoint_decompose(MatFieldOp::scalar(D(2))), NotSkewadjoint);
}

TEST_CASE("appendix example: majorant, echelon, determinant") {
    RatFunc a = fn("a");
    MatFieldOp m = mat2(C(1), C(a), D(), C(a) * D());
    Majorant maj = majorant(m);
    CHECK(maj.N == std::vector<int>{1, 1});
    CHECK(maj.h == std::vector<int>{1, 0});
    CHECK_FALSE(leading_det(leading_matrix(m, maj)));
    CHECK_THROWS_AS(majorant_preserving_reduce(m, maj), DegenerateLeadingMatrix);
    Echelon e = row_echelon(m);
    CHECK(e.m == mat2(C(1), C(a), FieldOp(), C(-fn("a", 1))));
    CHECK(apply_row_ops(m, e.ops) == e.m);
    auto det = dieudonne_det(m);
    REQUIRE(det);
    CHECK(det->c == -fn("a", 1));
    CHECK(det->degree == 0);
    auto pdet = dieudonne_det(PseudoMat(m));
    REQUIRE(pdet);
    CHECK(*pdet == *det);
}

TEST_CASE("pseudo inverse") {
    RatFunc x = RatFunc::x();
    PseudoOp p(C(x) * D(2) + C(RatFunc(1)));
    PseudoOp q = p.inverse(6);
    PseudoOp one = PseudoOp::compose(p, q, 6);
    CHECK(one.coeff(0) == RatFunc(1));
    for (int k = -1; k >= -5; --k) CHECK(one.coeff(k).is_zero());
    CHECK_THROWS_AS(one.coeff(-40), TruncationExceeded);
}

TEST_CASE("reduction on pseudo matrix") {
    MatFieldOp m = mat2(D(), C(1), C(1), D());
    Majorant maj{{1, 1}, {0, 0}};
    auto r = majorant_preserving_reduce(PseudoMat(m), maj);
    CHECK(r.pm.at(1, 0).known_zero());
    CHECK(r.pm.at(0, 0).order() == 1);
    CHECK(r.pm.at(1, 1).order() == 1);
    auto rd = majorant_preserving_reduce(m, maj);
    CHECK(rd.m.at(0, 0).order() == 1);
    CHECK(rd.m.at(1, 1).order() == 1);
    CHECK(rd.m.at(1, 0).order() < 1);
}

TEST_CASE("kernel bound") {
    CHECK(*kernel_dim_bound(MatFieldOp::scalar(D(2))) == 2);
    CHECK(*kernel_dim_bound(mat2(D(), FieldOp(), FieldOp(), D())) == 2);
    CHECK_FALSE(kernel_dim_bound(mat2(D(), D(), D(), D())));
}
