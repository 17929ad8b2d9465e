#include "g2c/poly.hpp"

#include <algorithm>

#include "g2c/errors.hpp"

namespace g2c {

void fpoly_trim(const Field& F, FPoly& p) {
    while (!p.empty() && F.is_zero(p.back())) p.pop_back();
}

int fpoly_deg(const FPoly& p) { return static_cast<int>(p.size()) - 1; }

FPoly fpoly_from_f3(const Field& F, const F3Poly& p) {
    FPoly r;
    r.reserve(p.size());
    for (uint8_t c : p) r.push_back(F.from_int(c));
    fpoly_trim(F, r);
    return r;
}

FPoly fpoly_x(const Field& F) { return {F.zero(), F.one()}; }

bool fpoly_eq(const FPoly& a, const FPoly& b) { return a == b; }

FPoly fpoly_add(const Field& F, const FPoly& a, const FPoly& b) {
    FPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    fpoly_trim(F, r);
    return r;
}

FPoly fpoly_sub(const Field& F, const FPoly& a, const FPoly& b) {
    FPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    fpoly_trim(F, r);
    return r;
}

FPoly fpoly_mul(const Field& F, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    fpoly_trim(F, r);
    return r;
}

FPoly fpoly_scale(const Field& F, const FPoly& a, const FElem& c) {
    FPoly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(F.mul(x, c));
    fpoly_trim(F, r);
    return r;
}

void fpoly_divrem(const Field& F, FPoly a, const FPoly& b, FPoly* q, FPoly* r) {
    if (b.empty()) throw internal_error("fpoly_divrem: division by zero polynomial");
    fpoly_trim(F, a);
    int db = fpoly_deg(b);
    FElem linv = F.inv(b.back());
    FPoly quot(std::max(0, fpoly_deg(a) - db + 1), F.zero());
    while (fpoly_deg(a) >= db) {
        int k = fpoly_deg(a) - db;
        FElem c = F.mul(a.back(), linv);
        quot[k] = F.add(quot[k], c);
        for (int i = 0; i <= db; ++i) a[k + i] = F.sub(a[k + i], F.mul(c, b[i]));
        fpoly_trim(F, a);
    }
    if (q) *q = std::move(quot);
    if (r) *r = std::move(a);
}

FPoly fpoly_rem(const Field& F, FPoly a, const FPoly& b) {
    FPoly r;
    fpoly_divrem(F, std::move(a), b, nullptr, &r);
    return r;
}

FPoly fpoly_quot(const Field& F, FPoly a, const FPoly& b) {
    FPoly q;
    fpoly_divrem(F, std::move(a), b, &q, nullptr);
    return q;
}

FPoly fpoly_monic(const Field& F, FPoly a) {
    fpoly_trim(F, a);
    if (a.empty() || F.is_one(a.back())) return a;
    return fpoly_scale(F, a, F.inv(a.back()));
}

FPoly fpoly_gcd(const Field& F, FPoly a, FPoly b) {
    fpoly_trim(F, a);
    fpoly_trim(F, b);
    while (!b.empty()) {
        a = fpoly_rem(F, std::move(a), b);
        std::swap(a, b);
    }
    return fpoly_monic(F, std::move(a));
}

FPoly fpoly_xgcd(const Field& F, FPoly a, FPoly b, FPoly* s, FPoly* t) {
    fpoly_trim(F, a);
    fpoly_trim(F, b);
    FPoly r0 = a, r1 = b;
    FPoly s0 = {F.one()}, s1 = {}, t0 = {}, t1 = {F.one()};
    while (!r1.empty()) {
        FPoly q, r;
        fpoly_divrem(F, r0, r1, &q, &r);
        r0 = std::move(r1);
        r1 = std::move(r);
        FPoly ns = fpoly_sub(F, s0, fpoly_mul(F, q, s1));
        s0 = std::move(s1);
        s1 = std::move(ns);
        FPoly nt = fpoly_sub(F, t0, fpoly_mul(F, q, t1));
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (r0.empty()) {
        *s = {};
        *t = {};
        return {};
    }
    FElem lc = F.inv(r0.back());
    *s = fpoly_scale(F, s0, lc);
    *t = fpoly_scale(F, t0, lc);
    return fpoly_scale(F, r0, lc);
}

FPoly fpoly_deriv(const Field& F, const FPoly& a) {
    FPoly r;
    for (size_t i = 1; i < a.size(); ++i)
        r.push_back(F.mul(a[i], F.from_int(static_cast<int>(i % 3))));
    fpoly_trim(F, r);
    return r;
}

FElem fpoly_eval(const Field& F, const FPoly& a, const FElem& x) {
    FElem r = F.zero();
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

FPoly fpoly_mulmod(const Field& F, const FPoly& a, const FPoly& b, const FPoly& mod) {
    return fpoly_rem(F, fpoly_mul(F, a, b), mod);
}

FPoly fpoly_powmod(const Field& F, FPoly base, mpz_class e, const FPoly& mod) {
    FPoly r = {F.one()};
    base = fpoly_rem(F, std::move(base), mod);
    if (e == 0) return r;
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        r = fpoly_mulmod(F, r, r, mod);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fpoly_mulmod(F, r, base, mod);
    }
    return r;
}

FPoly fpoly_map(const Embedding& emb, const FPoly& a) {
    FPoly r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(emb.up(c));
    fpoly_trim(*emb.to(), r);
    return r;
}

namespace {

// x^(3^k) mod g via k coefficient-cubing rounds; cheaper than generic powmod.
FPoly frob_power_of_x(const Field& F, const FPoly& g, unsigned k) {
    FPoly r = fpoly_rem(F, fpoly_x(F), g);
    for (unsigned t = 0; t < k; ++t) {
        if (r.empty()) break;
        FPoly cube(3 * (r.size() - 1) + 1, F.zero());
        for (size_t j = 0; j < r.size(); ++j) cube[3 * j] = F.frobenius(r[j]);
        r = fpoly_rem(F, std::move(cube), g);
    }
    return r;
}

void split_linear(const FieldPtr& Fp, const FPoly& h, std::mt19937_64& rng,
                  std::vector<FElem>* out) {
    const Field& F = *Fp;
    int d = fpoly_deg(h);
    if (d <= 0) return;
    if (d == 1) {
        out->push_back(F.neg(h[0]));  // h monic: x + h0
        return;
    }
    mpz_class half = (F.order() - 1) / 2;
    // Deterministic shifts first, then random ones.
    for (int attempt = 0;; ++attempt) {
        FElem a = attempt < 3 ? F.from_int(attempt) : F.random(rng);
        FPoly shifted = {a, F.one()};
        FPoly w = fpoly_powmod(F, shifted, half, h);
        if (w.empty()) {  // -a is a root
            FPoly lin = {a, F.one()};
            out->push_back(F.neg(a));
            FPoly rest = fpoly_quot(F, h, lin);
            split_linear(Fp, rest, rng, out);
            return;
        }
        w[0] = F.sub(w[0], F.one());
        fpoly_trim(F, w);
        FPoly g1 = fpoly_gcd(F, w, h);
        int dg = fpoly_deg(g1);
        if (dg > 0 && dg < d) {
            split_linear(Fp, g1, rng, out);
            split_linear(Fp, fpoly_quot(F, h, g1), rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FElem> fpoly_roots(const FieldPtr& Fp, const FPoly& g_in, std::mt19937_64& rng) {
    const Field& F = *Fp;
    FPoly g = fpoly_monic(F, g_in);
    if (g.empty()) throw input_error("fpoly_roots: zero polynomial");
    std::vector<FElem> distinct;
    if (fpoly_deg(g) >= 1) {
        FPoly xq = frob_power_of_x(F, g, static_cast<unsigned>(F.degree()));
        FPoly h = fpoly_gcd(F, fpoly_sub(F, xq, fpoly_x(F)), g);
        split_linear(Fp, h, rng, &distinct);
    }
    std::sort(distinct.begin(), distinct.end());
    std::vector<FElem> out;
    for (const auto& r : distinct) {
        FPoly lin = {F.neg(r), F.one()};
        FPoly rest = g;
        while (true) {
            FPoly q, rem;
            fpoly_divrem(F, rest, lin, &q, &rem);
            if (!rem.empty()) break;
            out.push_back(r);
            rest = std::move(q);
        }
    }
    return out;
}

RootSet rth_roots(const FieldPtr& F, const FElem& a, int r, std::mt19937_64& rng) {
    if (r != 2 && r != 4) throw input_error("rth_roots supports r in {2,4}");
    if (F->is_zero(a)) throw input_error("rth_roots of zero");
    std::vector<int> degrees = (r == 2) ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 4};
    for (int d : degrees) {
        ExtField ext = extend_field(F, d);
        FElem ae = ext.emb->up(a);
        FPoly p(static_cast<size_t>(r) + 1, ext.field->zero());
        p[0] = ext.field->neg(ae);
        p[static_cast<size_t>(r)] = ext.field->one();
        std::vector<FElem> roots = fpoly_roots(ext.field, p, rng);
        if (!roots.empty()) return RootSet{ext, std::move(roots)};
    }
    throw internal_error("rth_roots: no root found up to the expected extension degree");
}

}  // namespace g2c
