#include <random>

#include "doctest.h"
#include "g2c/relations.hpp"

using namespace g2c;

TEST_CASE("index set and canonicalization") {
    const auto& U = index_set_U();
    CHECK(U.size() == 19);
    // paper order: 01,02,03,10,...,33
    CHECK(U[0] == tidx(0, 1));
    CHECK(U[2] == tidx(0, 3));
    CHECK(U[3] == tidx(1, 0));
    CHECK(U[18] == tidx(3, 3));
    // 00 is the normalized constant
    CHECK(theta_var(tidx(0, 0)) == -1);
    // (0,3) is self-inverse
    CHECK(tidx_neg(tidx(0, 3)) == tidx(0, 3));
    // every index or its negation has a variable, consistently
    for (int c = 1; c < 36; ++c) {
        CHECK(theta_var(c) >= 0);
        CHECK(theta_var(c) == theta_var(tidx_neg(c)));
    }
    // embeddings: Z2 as multiplication by 3, Z3 as multiplication by 2
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(tidx_in_z2(tidx_mul(3, tidx(i, j))));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(tidx_in_z3(tidx_mul(2, tidx(i, j))));
}

TEST_CASE("relation family counts are stable") {
    const auto& S = relation_set();
    MESSAGE("forms=", S.forms.size(), " riemann=", S.riemann.size(),
            " corr_a=", S.corr_a_count, " corr_total=", S.corr.size(),
            " classes=", S.quadruple_class_count);
    CHECK(S.forms.size() == 82);
    CHECK(S.riemann.size() == 200);
    CHECK(S.corr_a_count == 6);
    CHECK(S.corr.size() == 16);
    CHECK(S.quadruple_class_count == 14130);
    // the same singleton is returned on every call
    CHECK(&relation_set() == &S);
}

TEST_CASE("special relation shape") {
    const auto& t = special_relation();
    CHECK(t.size() == 32);
    int twos = 0;
    for (const auto& term : t) {
        CHECK((term.c == 1 || term.c == 2));
        twos += term.c == 2;
        for (int8_t v : term.v) CHECK(v < 19);
    }
    CHECK(twos == 16);
}

TEST_CASE("small system instantiation") {
    auto F = Field::make(2, F3Poly{1, 0, 1});
    std::mt19937_64 rng(41);
    FElem a00 = F->one(), a03 = F->random(rng), a30 = F->random(rng), a33 = F->random(rng);
    auto sys = small_system(F, a00, a03, a30, a33);
    REQUIRE(sys.size() == 4);
    for (const auto& p : sys) {
        CHECK(p.nv == 4);
        int maxdeg = 0;
        for (const auto& tm : p.t) {
            int d = 0;
            for (auto e : tm.first) d += e;
            maxdeg = std::max(maxdeg, d);
        }
        CHECK(maxdeg == 4);
    }
    // with all four 2-theta values equal, equations 2,3,4 become symmetric in
    // the diagonal direction: they coincide after identifying all variables
    auto sys2 = small_system(F, F->one(), F->one(), F->one(), F->one());
    auto eval_diag = [&](const MPoly& p, const FElem& y) {
        return mp_eval(*F, p, {y, y, y, y});
    };
    for (int rep = 0; rep < 20; ++rep) {
        FElem y = F->random(rng);
        FElem v2 = eval_diag(sys2[1], y);
        CHECK(v2 == eval_diag(sys2[2], y));
        CHECK(v2 == eval_diag(sys2[3], y));
    }
}

TEST_CASE("evaluation agrees between field and Witt ring") {
    std::mt19937_64 rng(42);
    auto F = Field::make(3);
    auto W = WittRing::make(F, 5);
    const auto& S = relation_set();
    FieldEval rf{*F};
    WittEval rw{*W, 5};
    std::vector<FElem> fv;
    std::vector<WElem> wv;
    for (int i = 0; i < kNumVars; ++i) {
        WElem w = W->zero(5);
        std::uniform_int_distribution<long> d(0, 242);
        w.c[0] = d(rng);
        w.c[1] = d(rng);
        w.c[2] = d(rng);
        wv.push_back(w);
        fv.push_back(W->reduce(w));
    }
    auto pick = [&](const std::vector<Relation>& list) {
        return list[rng() % list.size()];
    };
    for (int rep = 0; rep < 40; ++rep) {
        Relation r = rng() % 2 ? pick(S.riemann) : pick(S.corr);
        WElem ew = relation_eval(rw, S, r, wv);
        CHECK(W->reduce(ew) == relation_eval(rf, S, r, fv));
        int var = static_cast<int>(rng() % kNumVars);
        WElem dw = relation_deriv(rw, S, r, var, wv);
        CHECK(W->reduce(dw) == relation_deriv(rf, S, r, var, fv));
    }
    // derivative really is the directional limit in the 3-adic sense:
    // f(x + 3^2 e_i) - f(x) = 3^2 * df/dx_i mod 3^4
    for (int rep = 0; rep < 20; ++rep) {
        Relation r = pick(S.corr);
        int var = static_cast<int>(rng() % kNumVars);
        std::vector<WElem> shifted = wv;
        shifted[static_cast<size_t>(var)] =
            W->add(shifted[static_cast<size_t>(var)], W->mul_int(W->one(5), 9));
        WElem lhs = W->sub(relation_eval(rw, S, r, shifted), relation_eval(rw, S, r, wv));
        WElem rhs = W->mul_int(relation_deriv(rw, S, r, var, wv), 9);
        CHECK(W->is_zero(W->truncate(W->sub(lhs, rhs), 4)));
    }
}
