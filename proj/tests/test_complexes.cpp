#include "doctest.h"

#include "gen.hpp"
#include "varpois/complexes.hpp"
#include "varpois/errors.hpp"
#include "varpois/symbols.hpp"

using namespace vp;

namespace {
DiffPoly u(unsigned n = 0) { return DiffPoly::jet(1, n); }
DiffPoly half(const DiffPoly& p) { return p * FieldElem(Rat(1, 2)); }
LPoly lam(unsigned nv, unsigned k, unsigned e = 1) { return LPoly::var(nv, k, e); }
LPoly cst(unsigned nv, const DiffPoly& c) { return LPoly::constant(nv, c); }
SkewArray one_form(const LPoly& p) {
    SkewArray a(1, 1);
    a.set({1}, p);
    return a;
}
MatFieldOp dK(unsigned n) { return MatFieldOp::scalar(FieldOp::d(n)); }
Hamiltonian gfz() { return {MatDiffOp::scalar(DiffOp::d())}; }
Hamiltonian magri() {
    DiffPoly c(RatFunc::var(param_var(intern_param("c"))));
    return {MatDiffOp::scalar(DiffOp(u(1)) + DiffOp::term(DiffPoly(2) * u(), 1) + DiffOp::term(c, 3))};
}
MatFieldOp two_by_two() {
    MatFieldOp K(2, 2);
    K.at(0, 0) = FieldOp::d(2) + FieldOp(RatFunc::x());
    K.at(0, 1) = FieldOp::d();
    K.at(1, 0) = FieldOp(RatFunc(3));
    K.at(1, 1) = FieldOp::d(2);
    return K;
}
}  // namespace

TEST_CASE("skew arrays: sign rule and antisymmetrization") {
    std::mt19937 rng(7);
    gen::Shape s;
    s.ell = 2;
    for (unsigned k = 1; k <= 3; ++k) {
        SkewArray P = gen::rand_array(rng, k, s);
        CHECK(P.is_skew());
        // swapping the first two slots flips the sign after renaming lambdas
        if (k >= 2) {
            Index t(k, 1);
            t[0] = 2;
            std::vector<unsigned> sw(k);
            for (unsigned r = 0; r < k; ++r) sw[r] = r;
            std::swap(sw[0], sw[1]);
            Index ts = t;
            std::swap(ts[0], ts[1]);
            CHECK(rename_vars(P.at(ts), k, sw) == -P.at(t));
        }
    }
    SkewArray A = SkewArray::antisymmetrize(2, 1, [](const Index&) { return LPoly::var(2, 0); });
    CHECK(A.stored({1, 1}) == (lam(2, 0) - lam(2, 1)) * DiffPoly(Rat(1, 2)));
}

TEST_CASE("de Rham differential") {
    SkewArray f = SkewArray::scalar(1, half(u() * u()));
    CHECK(de_rham_delta(f) == one_form(cst(1, u())));
    CHECK(de_rham_delta(one_form(lam(1, 0, 2) * cst(1, DiffPoly(RatFunc::x())))).is_zero());
    SkewArray g = SkewArray::scalar(1, u() * u() * u() * u(1));
    CHECK(de_rham_delta(de_rham_delta(g)).is_zero());
    std::mt19937 rng(11);
    gen::Shape s;
    s.ell = 2;
    for (unsigned k = 0; k <= 2; ++k) CHECK(de_rham_delta(de_rham_delta(gen::rand_array(rng, k, s))).is_zero());
}

TEST_CASE("delta_K") {
    SkewArray f = SkewArray::scalar(1, half(u() * u()));
    CHECK(delta_K(f, dK(1)) == one_form(lam(1, 0) * cst(1, u())));
    std::mt19937 rng(13);
    gen::Shape s;
    s.ell = 2;
    s.with_x = true;
    MatFieldOp K = two_by_two();
    for (unsigned k = 0; k <= 2; ++k) {
        SkewArray P = gen::rand_array(rng, k, s);
        CHECK(delta_K(P, MatFieldOp::identity(2)) == de_rham_delta(P));
        CHECK(delta_K(delta_K(P, K), K).is_zero());
        CHECK(delta_K(partial_action(P), K) == partial_action(delta_K(P, K)));
    }
    CHECK(delta_K(gen::rand_omega00(rng, 2, 2, 2, true), K).is_zero());
    MatDiffOp bad = MatDiffOp::scalar(DiffOp::term(u(), 1));
    CHECK_THROWS_AS(delta_K(f, bad), NotQuasiconstant);
}

TEST_CASE("partial action and the quotient") {
    CHECK(partial_action(one_form(cst(1, u()))) == one_form(cst(1, u(1)) + lam(1, 0) * cst(1, u())));
    std::mt19937 rng(17);
    gen::Shape s;
    s.ell = 2;
    for (unsigned k = 1; k <= 3; ++k) {
        SkewArray P = gen::rand_array(rng, k, s);
        if (P.is_zero()) continue;
        CHECK_FALSE(partial_action(P).is_zero());
        CHECK(QuotientArray{partial_action(P)}.is_zero());
        CHECK_FALSE(QuotientArray{P}.is_zero());
    }
    // lambda u ~ -u' in Omega^1
    CHECK(QuotientArray{one_form(lam(1, 0) * cst(1, u()))}.equals(QuotientArray{one_form(cst(1, -u(1)))}));
}

TEST_CASE("d_K") {
    QuotientArray h{SkewArray::scalar(1, half(u() * u()))};
    CHECK(d_K(h, gfz()).equals(QuotientArray{one_form(cst(1, u(1)))}));
    std::mt19937 rng(19);
    gen::Shape s;
    s.max_order = 1;
    s.terms = 2;
    for (int rep = 0; rep < 2; ++rep) {
        QuotientArray P{gen::rand_array(rng, 1, s)};
        CHECK(d_K(d_K(P, magri()), magri(), false).is_zero());
    }
    // skewadjoint quasiconstant K: d_K = (-1)^{k+1} delta_K
    Hamiltonian K{MatDiffOp::scalar(DiffOp::d(3) + DiffOp::term(DiffPoly(2), 1))};
    for (unsigned k = 0; k <= 2; ++k) {
        SkewArray P = gen::rand_array(rng, k, s);
        SkewArray d = delta_K(P, K.H);
        if (k % 2 == 0) d = -d;
        CHECK(d_K(QuotientArray{P}, K).equals(QuotientArray{d}));
    }
    Hamiltonian notskew{MatDiffOp::identity(1)};
    CHECK_THROWS_AS(d_K(h, notskew), NotPoisson);
}

TEST_CASE("filtration and antiderivatives") {
    CHECK(filtration_level(one_form(lam(1, 0, 2) * cst(1, DiffPoly(RatFunc::x()))), 3) == FiltrationLevel{0, 0});
    CHECK(filtration_level(one_form(cst(1, u())), 1) == FiltrationLevel{0, 1});
    CHECK(filtration_level(one_form(lam(1, 0, 3) * cst(1, u(2))), 1) == FiltrationLevel{2, 1});
    CHECK(antiderivative(u() * u(), 1, 0) == u() * u() * u() * FieldElem(Rat(1, 3)));
    CHECK(antiderivative(DiffPoly(1), 1, 0) == u());
    CHECK_THROWS_AS(antiderivative(u(1), 1, 0), OutOfFiltration);
}

TEST_CASE("homotopy operators") {
    CHECK(homotopy(one_form(lam(1, 0) * cst(1, u())), {0, 1}, 1) == SkewArray::scalar(1, half(u() * u())));
    CHECK(homotopy(one_form(lam(1, 0)), {0, 1}, 1) == SkewArray::scalar(1, u()));
    CHECK(homotopy(one_form(cst(1, DiffPoly(1))), {0, 1}, 1).is_zero());
    CHECK_THROWS_AS(homotopy(one_form(cst(1, u(1))), {0, 1}, 1), OutOfFiltration);

    // h d + d h - 1 lowers the level
    std::mt19937 rng(23);
    MatFieldOp K(2, 2);
    K.at(0, 0) = FieldOp::d(2) + FieldOp(RatFunc::x());
    K.at(0, 1) = FieldOp::d();
    K.at(1, 0) = FieldOp(RatFunc(3));
    K.at(1, 1) = FieldOp::d(2) + FieldOp::d();
    gen::Shape s;
    s.ell = 2;
    s.max_order = 1;
    s.terms = 3;
    for (unsigned k = 1; k <= 2; ++k)
        for (int rep = 0; rep < 3; ++rep) {
            SkewArray P = gen::rand_array(rng, k, s);
            FiltrationLevel L = filtration_level(P, 2);
            if (L == FiltrationLevel{0, 0}) continue;
            SkewArray T = homotopy(delta_K(P, K), L, 2) + delta_K(homotopy(P, L, 2), K) - P;
            FiltrationLevel below = L.i == 1 ? FiltrationLevel{L.m, 0} : FiltrationLevel{L.m, L.i - 1};
            CHECK(in_filtration(T, below, 2));
        }
}

TEST_CASE("Phi_S functoriality") {
    std::mt19937 rng(29);
    gen::Shape s;
    s.ell = 2;
    MatFieldOp S(2, 2), T(2, 2);
    S.at(0, 0) = FieldOp(RatFunc::x());
    S.at(0, 1) = FieldOp(RatFunc(1));
    S.at(1, 1) = FieldOp(RatFunc(2));
    T.at(0, 0) = FieldOp(RatFunc(1));
    T.at(1, 0) = FieldOp(RatFunc::x() * RatFunc::x());
    T.at(1, 1) = FieldOp(RatFunc(-1));
    MatFieldOp K = two_by_two();
    for (unsigned k = 1; k <= 2; ++k) {
        SkewArray P = gen::rand_array(rng, k, s);
        CHECK(phi_S(phi_S(P, T), S) == phi_S(P, T * S));
        CHECK(phi_S(delta_K(P, K), S) == delta_K(phi_S(P, S), K * S));
    }
}

TEST_CASE("reduce_closed") {
    auto r = reduce_closed(one_form(lam(1, 0) * cst(1, u())), dK(1));
    CHECK(r.Q == SkewArray::scalar(1, half(u() * u())));
    CHECK(r.R.is_zero());
    auto r1 = reduce_closed(one_form(cst(1, DiffPoly(1))), dK(1));
    CHECK(r1.Q.is_zero());
    CHECK(r1.R == one_form(cst(1, DiffPoly(1))));
    CHECK_THROWS_AS(reduce_closed(one_form(cst(1, u())), dK(1)), NotClosed);

    std::mt19937 rng(31);
    gen::Shape s;
    s.ell = 2;
    s.max_order = 1;
    MatFieldOp K = two_by_two();
    K.at(1, 1) = FieldOp::term(RatFunc(2), 2);  // leading coefficient diag(1, 2)
    for (unsigned k = 0; k <= 1; ++k) {
        SkewArray Q0 = gen::rand_array(rng, k, s);
        SkewArray P = delta_K(Q0, K);
        auto red = reduce_closed(P, K);
        CHECK(red.R.is_zero());
        CHECK(delta_K(red.Q, K) == P);
        SkewArray C = gen::rand_omega00(rng, 2, 2, k + 1, true);
        auto red2 = reduce_closed(P + C, K);
        CHECK(red2.R == C);
    }
    MatFieldOp sing(1, 1);
    sing.at(0, 0) = FieldOp::term(RatFunc(0), 1) + FieldOp(RatFunc(1));
    CHECK_THROWS_AS(reduce_closed(one_form(cst(1, DiffPoly(1))), sing), DegenerateShape);
}

TEST_CASE("alpha_k") {
    SkewArray a = SkewArray::scalar(1, DiffPoly(RatFunc::x() * RatFunc::x()));
    CHECK(alpha_k(a, dK(3)) == SkewArray::scalar(1, DiffPoly(RatFunc::x() * 2)));
    SkewArray s1 = one_form(cst(1, DiffPoly(RatFunc::x() * RatFunc::x() * RatFunc::x())));
    CHECK(alpha_k(s1, dK(1)) == one_form(cst(1, DiffPoly(RatFunc::x() * RatFunc::x() * 3))));
    CHECK(alpha_k(SkewArray(2, 1), dK(2)).is_zero());
    MatFieldOp K2 = MatFieldOp::scalar(FieldOp::term(RatFunc(2), 1));
    CHECK_THROWS_AS(alpha_k(s1, K2), LeadingCoeffNotIdentity);
}

TEST_CASE("Omega_{0,0} dimensions") {
    CHECK(dim_omega00(1, 1, 0) == 1);
    CHECK(dim_omega00(1, 1, 2) == 0);
    CHECK(dim_omega00(2, 2, 3) == 4);
    for (unsigned N = 1; N <= 3; ++N)
        for (unsigned ell = 1; ell <= 2; ++ell)
            for (unsigned k = 0; k <= 4; ++k) {
                Omega00Basis B = omega00_basis(N, ell, k);
                CHECK(B.basis.size() == dim_omega00(N, ell, k));
                for (auto& b : B.basis) {
                    CHECK(b.is_skew());
                    CHECK(in_filtration(b, {0, 0}, N));
                }
            }
}

TEST_CASE("variational cohomology dimensions") {
    CHECK(cohomology_dim(dK(1), 0).dim == 1);
    CHECK(cohomology_dim(dK(1), 1).dim == 0);
    auto r = cohomology_dim(dK(2), 1);
    CHECK(r.dim == 1);
    CHECK_FALSE(r.lower_bound);
    auto r2 = cohomology_dim(dK(3), 1);
    CHECK(r2.dim == 3);
    for (auto& rep : r2.representatives) {
        CHECK(rep.arity() == 1);
        CHECK(QuotientArray{delta_K(rep, dK(3))}.is_zero());
        CHECK_FALSE(QuotientArray{rep}.is_zero());
    }
}

TEST_CASE("phi_K1") {
    MatDiffOp S = MatDiffOp::scalar(DiffOp::d());
    CHECK(phi_K1(S, gfz()) == MatDiffOp::scalar(-DiffOp::d(3)));
    CHECK(phi_K1(MatDiffOp(1, 1), gfz()).is_zero());
    CHECK_THROWS_AS(phi_K1(MatDiffOp::identity(1), gfz()), NotSkewadjoint);
}
