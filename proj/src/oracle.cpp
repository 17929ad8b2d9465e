#include "g2c/oracle.hpp"

#include <thread>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

long field_card(const FieldPtr& F) {
    long q = 1;
    for (int i = 0; i < F->degree(); ++i) q *= 3;
    return q;
}

FElem code_to_elem(int n, long code) {
    FElem e(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        e[i] = static_cast<uint8_t>(code % 3);
        code /= 3;
    }
    return e;
}

long elem_to_code(const FElem& e) {
    long c = 0;
    for (size_t i = e.size(); i-- > 0;) c = c * 3 + e[i];
    return c;
}

// number of affine points of y^2 = f(x) over F
long affine_count(const FieldPtr& F, const FPoly& f, int threads) {
    const long q = field_card(F);
    const int n = F->degree();
    // sol[v] = number of y with y^2 = v
    std::vector<uint8_t> sol(static_cast<size_t>(q), 0);
    for (long y = 0; y < q; ++y) {
        FElem e = code_to_elem(n, y);
        ++sol[static_cast<size_t>(elem_to_code(F->mul(e, e)))];
    }
    auto chunk = [&](long lo, long hi) {
        long total = 0;
        for (long x = lo; x < hi; ++x) {
            FElem fx = fpoly_eval(*F, f, code_to_elem(n, x));
            total += sol[static_cast<size_t>(elem_to_code(fx))];
        }
        return total;
    };
    if (threads <= 1 || q < 4096) return chunk(0, q);
    std::vector<std::thread> pool;
    std::vector<long> part(static_cast<size_t>(threads), 0);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            part[static_cast<size_t>(t)] = chunk(q * t / threads, q * (t + 1) / threads);
        });
    for (auto& th : pool) th.join();
    long total = 0;
    for (long p : part) total += p;
    return total;
}

}  // namespace

ZetaData naive_chi(const Curve& c, int threads) {
    const long q = field_card(c.F);
    if (q > 10000)  // q^2 <= 10^8
        throw math_refusal("field too large for the naive counting oracle");
    ZetaData z;
    z.count_q = affine_count(c.F, c.f, threads) + 1;
    ExtField E = extend_field(c.F, 2);
    z.count_q2 = affine_count(E.field, fpoly_map(*E.emb, c.f), threads) + 1;
    z.chi.q = q;
    z.chi.s1 = q + 1 - z.count_q;
    mpz_class t2 = mpz_class(q) * q + 1 - z.count_q2;  // s1^2 - 2 s2
    z.chi.s2 = (z.chi.s1 * z.chi.s1 - t2) / 2;
    return z;
}

std::vector<mpz_class> unit_root_factor(const FrobCharPoly& chi, int m) {
    mpz_class s2m3 = chi.s2 % 3;
    if (s2m3 == 0) throw math_refusal("curve is not ordinary (s2 divisible by 3)");
    mpz_class M = 1;
    for (int i = 0; i < m; ++i) M *= 3;
    auto mod3 = [](const mpz_class& a) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mpz_class(3).get_mpz_t());
        return static_cast<uint8_t>(r.get_ui());
    };
    // chi coefficients, low to high
    std::vector<mpz_class> chiv = {chi.q * chi.q, -chi.q * chi.s1, chi.s2, -chi.s1, 1};
    // starting factorization mod 3: chi = (T^2 - s1 T + s2) * T^2
    std::vector<mpz_class> g = {mod3(chi.s2), mod3(-chi.s1), 1};
    std::vector<mpz_class> h = {0, 0, 1};

    // Bezout data over F_3: u*h + v*g = 1
    auto F3 = Field::make(1);
    auto to_fp = [&](const std::vector<mpz_class>& p) {
        FPoly r;
        for (const auto& cc : p) r.push_back({mod3(cc)});
        fpoly_trim(*F3, r);
        return r;
    };
    FPoly u, v;
    FPoly one = fpoly_xgcd(*F3, to_fp(h), to_fp(g), &u, &v);
    if (fpoly_deg(one) != 0)
        throw internal_error("unit and non-unit factors are not coprime mod 3");

    mpz_class p3k = 1;
    for (int k = 1; k < m; ++k) {
        p3k *= 3;
        // residual e = (chi - g*h) / 3^k mod 3
        std::vector<mpz_class> gh(5, 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gh[i + j] += g[i] * h[j];
        FPoly e;
        for (int i = 0; i < 5; ++i) {
            mpz_class diff = chiv[i] - gh[i];
            if (diff % p3k != 0) throw internal_error("Hensel residual not divisible");
            e.push_back({mod3(diff / p3k)});
        }
        fpoly_trim(*F3, e);
        FPoly dg = fpoly_rem(*F3, fpoly_mul(*F3, u, e), to_fp(g));
        FPoly dh = fpoly_quot(*F3, fpoly_sub(*F3, e, fpoly_mul(*F3, dg, to_fp(h))), to_fp(g));
        for (size_t i = 0; i < dg.size(); ++i) g[i] += p3k * dg[i][0];
        for (size_t i = 0; i < dh.size(); ++i) h[i] += p3k * dh[i][0];
    }
    for (auto& cc : g) mpz_fdiv_r(cc.get_mpz_t(), cc.get_mpz_t(), M.get_mpz_t());
    return g;
}

mpz_class unit_root_product(const FrobCharPoly& chi, int m) {
    return unit_root_factor(chi, m)[0];
}

}  // namespace g2c
