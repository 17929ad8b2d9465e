#include "g2c/jacobian.hpp"

#include "g2c/errors.hpp"

namespace g2c {

Curve make_curve_quintic(const FieldPtr& F, const FPoly& coeffs) {
    FPoly f = coeffs;
    fpoly_trim(*F, f);
    if (fpoly_deg(f) != 5) throw input_error("curve polynomial must have degree 5");
    if (!F->is_one(f[5])) {
        // (x,y) -> (ax, a^2 y) turns y^2 = f into a monic model
        FElem a = f[5];
        FPoly g(6, F->zero());
        g[5] = F->one();
        FElem pw = F->one();  // a^(4-i), built from i = 4 down
        for (int i = 4; i >= 0; --i) {
            g[i] = F->mul(f[i], pw);
            pw = F->mul(pw, a);
        }
        f = g;
    }
    FPoly d = fpoly_gcd(*F, f, fpoly_deriv(*F, f));
    if (fpoly_deg(d) != 0) throw input_error("curve is singular (quintic not squarefree)");
    return Curve{F, f};
}

Curve make_curve_rosenhain(const FieldPtr& F, const FElem& e1, const FElem& e2,
                           const FElem& e3) {
    std::vector<FElem> branch = {F->zero(), F->one(), e1, e2, e3};
    for (size_t i = 0; i < branch.size(); ++i)
        for (size_t j = i + 1; j < branch.size(); ++j)
            if (branch[i] == branch[j])
                throw input_error("Rosenhain invariants must keep 0,1,e1,e2,e3 distinct");
    FPoly f = {F->one()};
    for (const auto& e : branch) f = fpoly_mul(*F, f, {F->neg(e), F->one()});
    return Curve{F, f};
}

Divisor jac_identity(const Curve& c) { return Divisor{{c.F->one()}, {}}; }

bool jac_is_identity(const Curve&, const Divisor& d) { return fpoly_deg(d.u) == 0; }

bool jac_eq(const Divisor& a, const Divisor& b) { return a.u == b.u && a.v == b.v; }

namespace {

Divisor reduce(const Curve& c, FPoly u, FPoly v) {
    const Field& F = *c.F;
    while (fpoly_deg(u) > 2) {
        FPoly un = fpoly_quot(F, fpoly_sub(F, c.f, fpoly_mul(F, v, v)), u);
        un = fpoly_monic(F, std::move(un));
        FPoly vn = fpoly_rem(F, fpoly_scale(F, v, F.neg(F.one())), un);
        u = std::move(un);
        v = std::move(vn);
    }
    u = fpoly_monic(F, std::move(u));
    v = fpoly_rem(F, std::move(v), u);
    return Divisor{std::move(u), std::move(v)};
}

}  // namespace

Divisor jac_add(const Curve& c, const Divisor& a, const Divisor& b) {
    const Field& F = *c.F;
    // Cantor composition
    FPoly e1, e2;
    FPoly d1 = fpoly_xgcd(F, a.u, b.u, &e1, &e2);
    FPoly c1, c2;
    FPoly d = fpoly_xgcd(F, d1, fpoly_add(F, a.v, b.v), &c1, &c2);
    FPoly s1 = fpoly_mul(F, c1, e1);
    FPoly s2 = fpoly_mul(F, c1, e2);
    const FPoly& s3 = c2;
    FPoly u = fpoly_quot(F, fpoly_mul(F, a.u, b.u), fpoly_mul(F, d, d));
    FPoly num = fpoly_add(F, fpoly_add(F, fpoly_mul(F, fpoly_mul(F, s1, a.u), b.v),
                                       fpoly_mul(F, fpoly_mul(F, s2, b.u), a.v)),
                          fpoly_mul(F, s3, fpoly_add(F, fpoly_mul(F, a.v, b.v), c.f)));
    FPoly v = fpoly_rem(F, fpoly_quot(F, num, d), u);
    return reduce(c, std::move(u), std::move(v));
}

Divisor jac_neg(const Curve& c, const Divisor& a) {
    return Divisor{a.u, fpoly_scale(*c.F, a.v, c.F->neg(c.F->one()))};
}

Divisor jac_scalar_mul(const Curve& c, const mpz_class& k, const Divisor& a) {
    mpz_class e = k;
    Divisor base = a;
    if (e < 0) {
        e = -e;
        base = jac_neg(c, base);
    }
    Divisor acc = jac_identity(c);
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        acc = jac_add(c, acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            acc = jac_add(c, acc, base);
    }
    return acc;
}

namespace {

bool random_point(const Curve& c, std::mt19937_64& rng, Divisor* out) {
    const Field& F = *c.F;
    FElem x0 = F.random(rng);
    FElem fx = fpoly_eval(F, c.f, x0);
    FPoly u = {F.neg(x0), F.one()};
    if (F.is_zero(fx)) {
        *out = Divisor{u, {}};
        return true;
    }
    auto ys = fpoly_roots(c.F, FPoly{F.neg(fx), F.zero(), F.one()}, rng);
    if (ys.empty()) return false;
    *out = Divisor{u, {ys[rng() % ys.size()]}};
    return true;
}

}  // namespace

Divisor jac_random(const Curve& c, std::mt19937_64& rng) {
    Divisor p1, p2;
    int guard = 0;
    while (!random_point(c, rng, &p1))
        if (++guard > 1000) throw internal_error("no curve points found (sampling broken)");
    while (!random_point(c, rng, &p2))
        if (++guard > 1000) throw internal_error("no curve points found (sampling broken)");
    return jac_add(c, p1, p2);
}

bool ordinary_test(const Curve& c) {
    const Field& F = *c.F;
    // f^((p-1)/2) = f for p = 3: the Hasse-Witt entries are plain coefficients
    FElem det = F.sub(F.mul(c.f[2], c.f[4]), F.mul(c.f[1], c.f[5]));
    return !F.is_zero(det);
}

}  // namespace g2c
