#include <algorithm>
#include <random>

#include "doctest.h"
#include "g2c/errors.hpp"
#include "g2c/polysys.hpp"

using namespace g2c;

namespace {

MPoly term(const Field& F, int nv, const FElem& c, std::initializer_list<int> exps) {
    Mono m(nv, 0);
    int i = 0;
    for (int e : exps) m[i++] = static_cast<uint16_t>(e);
    return mp_make(F, nv, {{m, c}}, MonoOrder::lex);
}

MPoly random_poly(const FieldPtr& F, int nv, int maxdeg, int nterms, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> de(0, maxdeg);
    std::vector<std::pair<Mono, FElem>> terms;
    for (int t = 0; t < nterms; ++t) {
        Mono m(nv, 0);
        for (auto& e : m) e = static_cast<uint16_t>(de(rng));
        terms.push_back({m, F->random(rng)});
    }
    return mp_make(*F, nv, std::move(terms), MonoOrder::lex);
}

// x^(q)-x for one variable, the field equation of F_q
MPoly field_equation(const FieldPtr& F, int nv, int v) {
    mpz_class q = 1;
    for (int i = 0; i < F->degree(); ++i) q *= 3;
    Mono hi(nv, 0), lo(nv, 0);
    hi[v] = static_cast<uint16_t>(q.get_ui());
    lo[v] = 1;
    return mp_make(*F, nv, {{hi, F->one()}, {lo, F->neg(F->one())}}, MonoOrder::lex);
}

std::vector<FElem> all_elements(const FieldPtr& F) {
    int n = F->degree();
    long q = 1;
    for (int i = 0; i < n; ++i) q *= 3;
    std::vector<FElem> out;
    for (long v = 0; v < q; ++v) {
        FElem e(n);
        long w = v;
        for (int i = 0; i < n; ++i) {
            e[i] = static_cast<uint8_t>(w % 3);
            w /= 3;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace

TEST_CASE("triangular system reduces in one pass") {
    auto F = Field::make(2, F3Poly{1, 0, 1});
    FElem c = F->gen();
    // vars: Y2 is variable 0 (higher), Y1 is variable 1
    MPoly p1 = mp_sub(*F, mp_var(*F, 2, 1), mp_const(*F, 2, c), MonoOrder::lex);
    MPoly p2 = mp_sub(*F, term(*F, 2, F->one(), {2, 0}), mp_var(*F, 2, 1), MonoOrder::lex);
    auto gb = buchberger(F, {p1, p2}, MonoOrder::lex);
    REQUIRE(gb.size() == 2);
    // basis sorted by descending leading monomial: Y2^2 - c first, Y1 - c second
    MPoly want0 = mp_sub(*F, term(*F, 2, F->one(), {2, 0}), mp_const(*F, 2, c), MonoOrder::lex);
    MPoly want1 = p1;
    CHECK(gb[0].t == want0.t);
    CHECK(gb[1].t == want1.t);
}

TEST_CASE("inconsistent ideal collapses to one") {
    auto F = Field::make(1);
    MPoly a = mp_var(*F, 1, 0);
    MPoly b = mp_add(*F, a, mp_const(*F, 1, F->one()), MonoOrder::lex);
    auto gb = buchberger(F, {a, b}, MonoOrder::lex);
    REQUIRE(gb.size() == 1);
    CHECK(gb[0].t.size() == 1);
    CHECK(gb[0].t[0].first == Mono(1, 0));
    std::mt19937_64 rng(1);
    auto sol = variety_zero_dim(F, gb, {1, 2, 3}, rng);
    CHECK(sol.points.empty());
}

TEST_CASE("square root of 2 appears over the quadratic extension") {
    auto F = Field::make(1);
    MPoly p = mp_sub(*F, term(*F, 1, F->one(), {2}), mp_const(*F, 1, F->from_int(2)),
                     MonoOrder::lex);
    auto gb = buchberger(F, {p}, MonoOrder::lex);
    std::mt19937_64 rng(2);
    auto sol = variety_zero_dim(F, gb, {1, 2}, rng);
    REQUIRE(sol.points.size() == 2);
    CHECK(sol.where.rel_degree == 2);
    auto K = sol.where.field;
    for (const auto& pt : sol.points) {
        CHECK(pt.min_degree == 2);
        CHECK(K->mul(pt.coords[0], pt.coords[0]) == sol.where.emb->up(F->from_int(2)));
    }
    CHECK(sol.points[0].coords[0] != sol.points[1].coords[0]);
}

TEST_CASE("variety matches brute force on exhaustible fields") {
    std::mt19937_64 rng(3);
    long cases = 0;
    auto run = [&](const FieldPtr& F, int nv, int reps) {
        auto elems = all_elements(F);
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<MPoly> gens;
            int ng = 1 + static_cast<int>(rng() % 3);
            for (int g = 0; g < ng; ++g) gens.push_back(random_poly(F, nv, 2, 4, rng));
            std::vector<MPoly> closed = gens;
            for (int v = 0; v < nv; ++v) closed.push_back(field_equation(F, nv, v));
            auto gb = buchberger(F, closed, MonoOrder::lex);
            REQUIRE(gb_is_zero_dimensional(gb));
            auto sol = variety_zero_dim(F, gb, {1}, rng);

            std::vector<std::vector<FElem>> brute;
            std::vector<FElem> pt(nv);
            std::vector<size_t> idx(nv, 0);
            long total = 1;
            for (int v = 0; v < nv; ++v) total *= static_cast<long>(elems.size());
            for (long code = 0; code < total; ++code) {
                long w = code;
                for (int v = 0; v < nv; ++v) {
                    pt[v] = elems[static_cast<size_t>(w % static_cast<long>(elems.size()))];
                    w /= static_cast<long>(elems.size());
                }
                bool ok = true;
                for (const auto& g : gens)
                    if (!F->is_zero(mp_eval(*F, g, pt))) ok = false;
                if (ok) brute.push_back(pt);
            }
            std::sort(brute.begin(), brute.end());
            std::vector<std::vector<FElem>> got;
            for (const auto& p : sol.points) {
                CHECK(p.min_degree == 1);
                got.push_back(p.coords);
            }
            std::sort(got.begin(), got.end());
            CHECK(got == brute);
            ++cases;
        }
    };
    run(Field::make(1), 2, 600);
    run(Field::make(1), 3, 320);
    run(Field::make(2, F3Poly{1, 0, 1}), 2, 100);
    CHECK(cases >= 1000);
}

TEST_CASE("normal form does not depend on basis order or generator order") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 40; ++rep) {
        auto F = rep < 32 ? Field::make(1) : Field::make(2, F3Poly{1, 0, 1});
        std::vector<MPoly> gens;
        for (int g = 0; g < 3; ++g) gens.push_back(random_poly(F, 3, 2, 4, rng));
        for (int v = 0; v < 3; ++v) gens.push_back(field_equation(F, 3, v));
        auto gb = buchberger(F, gens, MonoOrder::lex);

        // the reduced basis is unique: shuffling the generators changes nothing
        std::vector<MPoly> shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto gb2 = buchberger(F, shuffled, MonoOrder::lex);
        REQUIRE(gb.size() == gb2.size());
        for (size_t i = 0; i < gb.size(); ++i) CHECK(gb[i].t == gb2[i].t);

        // confluence: normal form is stable under reduction path
        MPoly f = random_poly(F, 3, 3, 6, rng);
        MPoly nf = mp_reduce(*F, f, gb, MonoOrder::lex);
        for (int s = 0; s < 5; ++s) {
            std::vector<MPoly> perm = gb;
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(mp_reduce(*F, f, perm, MonoOrder::lex).t == nf.t);
        }
        // every generator is in the ideal
        for (const auto& g : gens) CHECK(mp_reduce(*F, g, gb, MonoOrder::lex).is_zero());
    }
}

TEST_CASE("degrevlex basis still decides ideal membership") {
    std::mt19937_64 rng(5);
    auto F = Field::make(1);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<MPoly> gens;
        for (int g = 0; g < 2; ++g) gens.push_back(random_poly(F, 2, 2, 3, rng));
        gens.push_back(field_equation(F, 2, 0));
        gens.push_back(field_equation(F, 2, 1));
        auto gb = buchberger(F, gens, MonoOrder::degrevlex);
        for (const auto& g : gens)
            CHECK(mp_reduce(*F, g, gb, MonoOrder::degrevlex).is_zero());
        // a random combination of generators reduces to zero too
        MPoly comb = mp_zero(2);
        for (const auto& g : gens)
            comb = mp_add(*F, comb, mp_mul(*F, g, random_poly(F, 2, 1, 2, rng), MonoOrder::degrevlex),
                          MonoOrder::degrevlex);
        CHECK(mp_reduce(*F, comb, gb, MonoOrder::degrevlex).is_zero());
    }
}

TEST_CASE("positive-dimensional systems are refused") {
    auto F = Field::make(1);
    MPoly p = mp_sub(*F, mp_var(*F, 2, 0), mp_var(*F, 2, 1), MonoOrder::lex);
    auto gb = buchberger(F, {p}, MonoOrder::lex);
    CHECK_FALSE(gb_is_zero_dimensional(gb));
    std::mt19937_64 rng(6);
    CHECK_THROWS_AS(variety_zero_dim(F, gb, {1}, rng), math_refusal);
}

TEST_CASE("pair budget aborts instead of spinning") {
    std::mt19937_64 rng(7);
    auto F = Field::make(2, F3Poly{1, 0, 1});
    std::vector<MPoly> gens;
    for (int g = 0; g < 4; ++g) gens.push_back(random_poly(F, 3, 4, 8, rng));
    CHECK_THROWS_AS(buchberger(F, gens, MonoOrder::lex, 1), math_refusal);
}
