#include <random>

#include "doctest.h"
#include "g2c/errors.hpp"
#include "g2c/witt3.hpp"

using namespace g2c;

namespace {

mpz_class mod_pos_test(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

WElem random_elem(const WittRingPtr& W, int prec, std::mt19937_64& rng) {
    WElem e = W->zero(prec);
    std::uniform_int_distribution<long> d(0, 1L << 40);
    for (auto& c : e.c) c = mod_pos_test(mpz_class(d(rng)), W->pow3(prec));
    return e;
}

}  // namespace

TEST_CASE("sigma on Z_9[i]") {
    auto F = Field::make(2, F3Poly{1, 0, 1});
    for (int m : {1, 2, 5, 8}) {
        auto W = WittRing::make(F, m);
        // x^2+1 lifts with the exact root -x, so sigma(x) = -x at any precision
        WElem x = W->lift(F->gen(), m);
        WElem sx = W->frob(x, 1);
        CHECK(W->is_zero(W->add(sx, x)));
        // sigma^2 = identity
        CHECK(W->frob(sx, 1).c == x.c);
        CHECK(W->frob(x, 2).c == x.c);
    }
}

TEST_CASE("sigma reduces to cubing mod 3") {
    std::mt19937_64 rng(21);
    for (int n : {2, 3, 5}) {
        auto F = Field::make(n);
        auto W = WittRing::make(F, 6);
        for (int iter = 0; iter < 100; ++iter) {
            WElem a = random_elem(W, 6, rng);
            FElem abar = W->reduce(a);
            CHECK(W->reduce(W->frob(a, 1)) == F->frobenius(abar));
        }
        // sigma^n is the identity
        WElem a = random_elem(W, 6, rng);
        CHECK(W->frob(a, static_cast<unsigned>(n)).c == a.c);
    }
}

TEST_CASE("sigma(x) is a genuine root of the lifted modulus") {
    auto F = Field::make(3);
    auto W = WittRing::make(F, 8);
    WElem z = W->frob(W->lift(F->gen(), 8), 1);
    // evaluate f at z via Horner with the {0,1,2} lift of the modulus
    WElem acc = W->zero(8);
    const F3Poly& f = F->modulus();
    for (size_t i = f.size(); i-- > 0;) {
        acc = W->mul(acc, z);
        acc = W->add(acc, W->from_int(f[i], 8));
    }
    CHECK(W->is_zero(acc));
}

TEST_CASE("ring axioms and units") {
    std::mt19937_64 rng(22);
    for (int n : {1, 2, 4}) {
        auto F = Field::make(n);
        auto W = WittRing::make(F, 7);
        for (int iter = 0; iter < 300; ++iter) {
            WElem a = random_elem(W, 7, rng), b = random_elem(W, 7, rng),
                  c = random_elem(W, 7, rng);
            CHECK(W->mul(a, W->add(b, c)).c == W->add(W->mul(a, b), W->mul(a, c)).c);
            CHECK(W->mul(W->mul(a, b), c).c == W->mul(a, W->mul(b, c)).c);
            CHECK(W->mul(a, W->one(7)).c == a.c);
            CHECK(W->is_zero(W->add(a, W->neg(a))));
            if (!F->is_zero(W->reduce(a))) {
                CHECK(W->mul(a, W->inv(a)).c == W->one(7).c);
            } else {
                CHECK_THROWS_AS(W->inv(a), math_refusal);
            }
        }
    }
}

TEST_CASE("frobenius is a ring homomorphism at full precision") {
    std::mt19937_64 rng(23);
    auto F = Field::make(3);
    auto W = WittRing::make(F, 9);
    for (int iter = 0; iter < 200; ++iter) {
        WElem a = random_elem(W, 9, rng), b = random_elem(W, 9, rng);
        CHECK(W->frob(W->mul(a, b), 1).c == W->mul(W->frob(a, 1), W->frob(b, 1)).c);
        CHECK(W->frob(W->add(a, b), 1).c == W->add(W->frob(a, 1), W->frob(b, 1)).c);
        // sigma^2 path agrees with two single steps
        CHECK(W->frob(a, 2).c == W->frob(W->frob(a, 1), 1).c);
    }
}

TEST_CASE("norm on Z_9[i] and against conjugates") {
    std::mt19937_64 rng(24);
    auto F = Field::make(2, F3Poly{1, 0, 1});
    auto W = WittRing::make(F, 6);
    // N(a + bx) = a^2 + b^2 for x^2 = -1
    for (int iter = 0; iter < 100; ++iter) {
        WElem e = random_elem(W, 6, rng);
        mpz_class want = mod_pos_test(e.c[0] * e.c[0] + e.c[1] * e.c[1], W->pow3(6));
        CHECK(W->norm(e) == want);
        CHECK(W->norm_by_conjugates(e) == want);
    }
    CHECK(W->norm(W->one(6)) == 1);
    CHECK(W->norm(W->zero(6)) == 0);
}

TEST_CASE("norm is multiplicative and matches the conjugate product") {
    std::mt19937_64 rng(25);
    for (int n : {2, 3, 5}) {
        auto F = Field::make(n);
        auto W = WittRing::make(F, 8);
        for (int iter = 0; iter < 60; ++iter) {
            WElem a = random_elem(W, 8, rng), b = random_elem(W, 8, rng);
            CHECK(W->norm(a) == W->norm_by_conjugates(a));
            mpz_class na = W->norm(a), nb = W->norm(b);
            CHECK(W->norm(W->mul(a, b)) == mod_pos_test(na * nb, W->pow3(8)));
        }
        // the constant 3 has norm 3^n
        mpz_class p3n = 1;
        for (int i = 0; i < n; ++i) p3n *= 3;
        CHECK(W->norm(W->from_int(3, 8)) == mod_pos_test(p3n, W->pow3(8)));
    }
}

TEST_CASE("norm of a constant is its n-th power") {
    auto F = Field::make(4);
    auto W = WittRing::make(F, 5);
    mpz_class c = 7;
    mpz_class want = 1;
    for (int i = 0; i < 4; ++i) want = (want * c) % W->pow3(5);
    CHECK(W->norm(W->from_int(c, 5)) == want);
}

TEST_CASE("precision algebra") {
    std::mt19937_64 rng(26);
    auto F = Field::make(3);
    auto W = WittRing::make(F, 10);
    WElem a = random_elem(W, 10, rng), b = random_elem(W, 6, rng);
    // mixed-precision ops land at the min
    CHECK(W->add(a, b).prec == 6);
    CHECK(W->mul(a, b).prec == 6);
    // truncation commutes with multiplication
    CHECK(W->truncate(W->mul(a, a), 4).c == W->mul(W->truncate(a, 4), W->truncate(a, 4)).c);

    // shift_down inverts multiplication by 3^k and drops precision
    WElem t = W->mul_int(a, W->pow3(3));
    CHECK(W->valuation(t) >= 3);
    WElem back = W->shift_down(t, 3);
    CHECK(back.prec == 7);
    CHECK(back.c == W->truncate(a, 7).c);
    // a unit has valuation 0, zero has full valuation
    if (!F->is_zero(W->reduce(a))) CHECK(W->valuation(a) == 0);
    CHECK(W->valuation(W->zero(10)) == 10);
    // shifting a non-divisible element is a hard error
    WElem u = W->one(5);
    CHECK_THROWS_AS(W->shift_down(u, 1), internal_error);
}

TEST_CASE("reduction is a homomorphism onto the residue field") {
    std::mt19937_64 rng(27);
    auto F = Field::make(5);
    auto W = WittRing::make(F, 4);
    for (int iter = 0; iter < 200; ++iter) {
        WElem a = random_elem(W, 4, rng), b = random_elem(W, 4, rng);
        CHECK(W->reduce(W->mul(a, b)) == F->mul(W->reduce(a), W->reduce(b)));
        CHECK(W->reduce(W->add(a, b)) == F->add(W->reduce(a), W->reduce(b)));
    }
    // lift then reduce is the identity on the residue field
    FElem r = F->random(rng);
    CHECK(W->reduce(W->lift(r, 4)) == r);
}
