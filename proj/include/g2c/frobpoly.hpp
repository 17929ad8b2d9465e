#pragma once

#include "g2c/lift.hpp"
#include "g2c/oracle.hpp"

namespace g2c {

// delta = 1 + 2 (a02 + a20 + a22 + a24)^{sigma^2}, the determinant of
// relative Verschiebung; Norm(delta) = +-pi_1 pi_2 up to the working
// precision.
WElem verschiebung_delta(const WittRing& W, const LiftState& st);

// candidate for the symmetric polynomial T^2 - s T + q t
struct SymCandidate {
    mpz_class s, t;
    int sbar0 = 0;  // residue digit tried, in [0..8]
    int sign = 1;   // sign choice for pi
};

// All (s, t) with |s|, |t| <= 9q compatible with pi ~ +-pi_1 pi_2 known mod
// 3^m. Both signs, all nine residue digits, and both size-bounded
// representatives of each congruence class are emitted; at most 72 entries.
std::vector<SymCandidate> enumerate_sym_candidates(const mpz_class& pi_approx,
                                                   const mpz_class& q, int m);

// (s, t) -> chi through the integer identities s2 = s + 2q and
// s1^2 = t + 2s + 4q; non-square or Weil-violating combinations are dropped.
std::vector<FrobCharPoly> sym_to_chi(const SymCandidate& c, const mpz_class& q);

// Drops candidates whose chi(1) fails to annihilate `trials` random divisor
// classes; survivors tied by order are retried over F_{q^2} with the
// norm-composed orders, then against chi(Frobenius) itself. Ties can remain
// when the Frobenius minimal polynomial degenerates (e.g. over extension
// fields); all survivors are returned.
std::vector<FrobCharPoly> eliminate_survivors(const std::vector<FrobCharPoly>& cands,
                                              const Curve& curve, int trials,
                                              std::mt19937_64& rng);

// As above but demands a unique survivor; zero or several raise math_refusal.
FrobCharPoly eliminate(const std::vector<FrobCharPoly>& cands, const Curve& curve,
                       int trials, std::mt19937_64& rng);

// The Weil-bounded quartics over F_q whose root d-th powers reproduce chi_l
// (enumeration only, no elimination).
std::vector<FrobCharPoly> descend_candidates(const FrobCharPoly& chi_l, int d,
                                             const mpz_class& q);

// charpoly after base change to F_{q^d}: roots are raised to the d-th power
// (computed by integer power sums, no root extraction)
FrobCharPoly chi_extend(const FrobCharPoly& chi, int d);

// Inverse of chi_extend: recovers chi over F_q from the charpoly over the
// degree-d extension, then confirms by elimination on the base curve.
// Closed forms cover d in {2, 3}; any d | 48 is handled for small q by a
// full Weil-box scan. Larger fields with d > 3 raise math_refusal.
FrobCharPoly descend_extension(const FrobCharPoly& chi_l, int d, const Curve& curve,
                               std::mt19937_64& rng);

}  // namespace g2c
