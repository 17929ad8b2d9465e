#include "g2c/frobpoly.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "g2c/errors.hpp"
#include "g2c/relations.hpp"

namespace g2c {

namespace {

mpz_class pow3(int m) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(m));
    return r;
}

// power sums p_1..p_k of the four roots of chi, by Newton's recurrence
std::vector<mpz_class> power_sums(const FrobCharPoly& chi, int k) {
    mpz_class e1 = chi.s1, e2 = chi.s2, e3 = chi.q * chi.s1, e4 = chi.q * chi.q;
    std::vector<mpz_class> p(static_cast<size_t>(k) + 1);
    if (k >= 1) p[1] = e1;
    if (k >= 2) p[2] = e1 * p[1] - 2 * e2;
    if (k >= 3) p[3] = e1 * p[2] - e2 * p[1] + 3 * e3;
    if (k >= 4) p[4] = e1 * p[3] - e2 * p[2] + e3 * p[1] - 4 * e4;
    for (int i = 5; i <= k; ++i)
        p[static_cast<size_t>(i)] = e1 * p[static_cast<size_t>(i - 1)] - e2 * p[static_cast<size_t>(i - 2)] +
                                    e3 * p[static_cast<size_t>(i - 3)] - e4 * p[static_cast<size_t>(i - 4)];
    return p;
}

mpz_class weil_s1_bound(const mpz_class& q) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    return 4 * r + 4;
}

Curve base_change(const Curve& c, const ExtField& ext) {
    return Curve{ext.field, fpoly_map(*ext.emb, c.f)};
}

bool annihilates(const Curve& c, const mpz_class& order, int trials, std::mt19937_64& rng) {
    for (int i = 0; i < trials; ++i) {
        Divisor d = jac_random(c, rng);
        if (!jac_is_identity(c, jac_scalar_mul(c, order, d))) return false;
    }
    return true;
}

Divisor divisor_frob(const Curve& c, const Divisor& d, int k) {
    auto map = [&](const FPoly& p) {
        FPoly r = p;
        for (auto& x : r) x = c.F->frobenius(x, static_cast<unsigned>(k));
        return r;
    };
    return Divisor{map(d.u), map(d.v)};
}

// chi(Frobenius) applied to d; zero characterizes the charpoly on a generic
// divisor much more sharply than plain order annihilation
bool chi_frob_annihilates(const Curve& c, const FrobCharPoly& chi, int frob_k,
                          const Divisor& d) {
    std::array<Divisor, 5> fd;
    fd[0] = d;
    for (size_t i = 1; i <= 4; ++i) fd[i] = divisor_frob(c, fd[i - 1], frob_k);
    std::array<mpz_class, 5> coef = {chi.q * chi.q, -chi.q * chi.s1, chi.s2, -chi.s1, mpz_class(1)};
    Divisor acc = jac_identity(c);
    for (size_t i = 0; i <= 4; ++i)
        acc = jac_add(c, acc, jac_scalar_mul(c, coef[i], fd[i]));
    return jac_is_identity(c, acc);
}

}  // namespace

WElem verschiebung_delta(const WittRing& W, const LiftState& st) {
    WElem s = W.zero(st.prec);
    for (int code : {tidx(0, 2), tidx(2, 0), tidx(2, 2), tidx(2, 4)})
        s = W.add(s, st.a[static_cast<size_t>(theta_var(code))]);
    return W.add(W.one(st.prec), W.mul_int(W.frob(s, 2), 2));
}

std::vector<SymCandidate> enumerate_sym_candidates(const mpz_class& pi_approx,
                                                   const mpz_class& q, int m) {
    mpz_class mod3 = pow3(m);
    mpz_class nq = 9 * q;
    mpz_class p0 = ((pi_approx % mod3) + mod3) % mod3;
    if (p0 % 3 == 0) throw math_refusal("eigenvalue product approximation is not a 3-adic unit");
    std::vector<SymCandidate> out;
    std::set<std::pair<mpz_class, mpz_class>> seen;
    for (int sign : {1, -1}) {
        mpz_class p = sign == 1 ? p0 : (mod3 - p0) % mod3;
        mpz_class pinv;
        mpz_invert(pinv.get_mpz_t(), p.get_mpz_t(), mod3.get_mpz_t());
        mpz_class base = (p + q * q % mod3 * pinv) % mod3;  // pi + q^2/pi
        for (int sbar0 = 0; sbar0 <= 8; ++sbar0) {
            mpz_class sr = ((p + sbar0 * q) % nq + nq) % nq;
            for (const mpz_class& s : {sr, mpz_class(sr - nq)}) {
                // s0 = (s - (pi + q^2/pi)) / q, exact; known mod 3^m / q = 9q
                mpz_class num = ((s - base) % mod3 + mod3) % mod3;
                if (num % q != 0) continue;
                mpz_class s0 = num / q % nq;
                mpz_class tr = p % nq * s0 % nq;
                for (const mpz_class& t : {tr, mpz_class(tr - nq)}) {
                    if (seen.insert({s, t}).second)
                        out.push_back({s, t, sbar0, sign});
                }
            }
        }
    }
    return out;
}

std::vector<FrobCharPoly> sym_to_chi(const SymCandidate& c, const mpz_class& q) {
    std::vector<FrobCharPoly> out;
    mpz_class s2 = c.s + 2 * q;
    mpz_class s1sq = c.t + 2 * c.s + 4 * q;
    if (s1sq < 0) return out;
    if (mpz_perfect_square_p(s1sq.get_mpz_t()) == 0) return out;
    mpz_class s1;
    mpz_sqrt(s1.get_mpz_t(), s1sq.get_mpz_t());
    if (abs(s2) > 6 * q) return out;
    mpz_class b1 = weil_s1_bound(q);
    if (s1 <= b1) {
        out.push_back({s1, s2, q});
        if (s1 != 0) out.push_back({-s1, s2, q});
    }
    return out;
}

std::vector<FrobCharPoly> eliminate_survivors(const std::vector<FrobCharPoly>& cands,
                                              const Curve& curve, int trials,
                                              std::mt19937_64& rng) {
    std::vector<FrobCharPoly> pool;
    for (const auto& c : cands) {
        bool dup = false;
        for (const auto& o : pool) dup = dup || o == c;
        if (!dup) pool.push_back(c);
    }
    std::vector<FrobCharPoly> alive;
    for (const auto& c : pool)
        if (annihilates(curve, c.order(), trials, rng)) alive.push_back(c);
    if (alive.size() > 1) {
        // orders can collide over F_q; the quadratic extension separates them
        ExtField ext = extend_field(curve.F, 2);
        Curve c2 = base_change(curve, ext);
        std::vector<FrobCharPoly> alive2;
        for (const auto& c : alive)
            if (annihilates(c2, chi_extend(c, 2).order(), trials, rng)) alive2.push_back(c);
        alive = std::move(alive2);
    }
    if (alive.size() > 1) {
        // final tie-break: evaluate the candidate at Frobenius itself, on
        // divisors of the quadratic extension where Frobenius acts freely
        ExtField ext = extend_field(curve.F, 2);
        Curve c2 = base_change(curve, ext);
        int fk = curve.F->degree();
        std::vector<FrobCharPoly> alive2;
        for (const auto& c : alive) {
            bool ok = true;
            for (int i = 0; ok && i < trials; ++i)
                ok = chi_frob_annihilates(c2, c, fk, jac_random(c2, rng));
            if (ok) alive2.push_back(c);
        }
        alive = std::move(alive2);
    }
    return alive;
}

FrobCharPoly eliminate(const std::vector<FrobCharPoly>& cands, const Curve& curve,
                       int trials, std::mt19937_64& rng) {
    if (cands.empty()) throw math_refusal("no characteristic polynomial candidates to eliminate");
    std::vector<FrobCharPoly> alive = eliminate_survivors(cands, curve, trials, rng);
    if (alive.empty()) throw math_refusal("every characteristic polynomial candidate was eliminated");
    if (alive.size() > 1) {
        std::string msg = "ambiguous characteristic polynomial candidates:";
        for (const auto& c : alive)
            msg += " (s1=" + c.s1.get_str() + ", s2=" + c.s2.get_str() + ")";
        throw math_refusal(msg);
    }
    return alive[0];
}

FrobCharPoly chi_extend(const FrobCharPoly& chi, int d) {
    if (d < 1) throw input_error("extension degree must be positive");
    if (d == 1) return chi;
    std::vector<mpz_class> p = power_sums(chi, 4 * d);
    mpz_class P1 = p[static_cast<size_t>(d)], P2 = p[static_cast<size_t>(2 * d)],
              P3 = p[static_cast<size_t>(3 * d)], P4 = p[static_cast<size_t>(4 * d)];
    mpz_class e1 = P1;
    mpz_class e2 = (e1 * P1 - P2) / 2;
    mpz_class e3 = (e2 * P1 - e1 * P2 + P3) / 3;
    mpz_class e4 = (e3 * P1 - e2 * P2 + e1 * P3 - P4) / 4;
    mpz_class qd = 1;
    for (int i = 0; i < d; ++i) qd *= chi.q;
    if (e3 != qd * e1 || e4 != qd * qd)
        throw internal_error("extended charpoly lost the functional equation");
    return {e1, e2, qd};
}

std::vector<FrobCharPoly> descend_candidates(const FrobCharPoly& chi_l, int d,
                                             const mpz_class& q) {
    mpz_class qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    if (chi_l.q != qd) throw input_error("descent degree does not match the charpoly field");
    if (d == 1) return {chi_l};
    if (48 % d != 0) throw math_refusal("descent degree does not divide 48");

    mpz_class b1 = weil_s1_bound(q), b2 = 6 * q;
    std::vector<FrobCharPoly> found;
    auto try_cand = [&](const mpz_class& s1, const mpz_class& s2) {
        if (abs(s1) > b1 || abs(s2) > b2) return;
        FrobCharPoly c{s1, s2, q};
        if (!(chi_extend(c, d) == chi_l)) return;
        for (const auto& o : found)
            if (o == c) return;
        found.push_back(c);
    };
    if (d == 2) {
        for (mpz_class s1 = -b1; s1 <= b1; ++s1) {
            // s1_l = p_2 = s1^2 - 2 s2
            mpz_class num = s1 * s1 - chi_l.s1;
            if (num % 2 == 0) try_cand(s1, num / 2);
        }
    } else if (d == 3) {
        for (mpz_class s1 = -b1; s1 <= b1; ++s1) {
            if (s1 == 0) continue;
            // s1_l = p_3 = s1^3 - 3 s1 s2 + 3 q s1
            mpz_class num = s1 * s1 * s1 + 3 * q * s1 - chi_l.s1;
            if (num % (3 * s1) == 0) try_cand(s1, num / (3 * s1));
        }
        if (chi_l.s1 == 0) {
            // s1 = 0 collapses p_3; then s2_l = s2^3 - 3 q^2 s2, solved on
            // the three monotone pieces of the cubic
            mpz_class turning[] = {-b2, -q, q, b2};
            for (int seg = 0; seg < 3; ++seg) {
                mpz_class lo = turning[seg], hi = turning[seg + 1];
                bool rising = seg != 1;
                while (lo <= hi) {
                    mpz_class mid = (lo + hi) / 2;  // floor toward -inf is fine here
                    mpz_class v = mid * mid * mid - 3 * q * q * mid - chi_l.s2;
                    if (v == 0) {
                        try_cand(0, mid);
                        break;
                    }
                    if ((v < 0) == rising) lo = mid + 1; else hi = mid - 1;
                }
            }
        }
    } else if (q <= 6561) {
        for (mpz_class s1 = -b1; s1 <= b1; ++s1)
            for (mpz_class s2 = -b2; s2 <= b2; ++s2) try_cand(s1, s2);
    } else {
        throw math_refusal("descent with degree above 3 is unsupported at this field size");
    }
    return found;
}

FrobCharPoly descend_extension(const FrobCharPoly& chi_l, int d, const Curve& curve,
                               std::mt19937_64& rng) {
    mpz_class q = 1;
    mpz_ui_pow_ui(q.get_mpz_t(), 3, static_cast<unsigned long>(curve.F->degree()));
    if (d == 1) {
        if (chi_l.q != q) throw input_error("descent degree does not match the charpoly field");
        return chi_l;
    }
    std::vector<FrobCharPoly> found = descend_candidates(chi_l, d, q);
    if (found.empty()) throw math_refusal("descent found no Weil-consistent charpoly");
    return eliminate(found, curve, 20, rng);
}

}  // namespace g2c
