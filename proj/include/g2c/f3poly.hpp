#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace g2c {

// Dense polynomials over F_3, coefficients in {0,1,2}, stored low-to-high.
using F3Poly = std::vector<uint8_t>;

inline uint8_t f3_add(uint8_t a, uint8_t b) { return static_cast<uint8_t>((a + b) % 3); }
inline uint8_t f3_sub(uint8_t a, uint8_t b) { return static_cast<uint8_t>((a + 3 - b) % 3); }
inline uint8_t f3_mul(uint8_t a, uint8_t b) { return static_cast<uint8_t>((a * b) % 3); }
inline uint8_t f3_neg(uint8_t a) { return static_cast<uint8_t>((3 - a) % 3); }
// 1 and 2 are self-inverse in F_3.
inline uint8_t f3_inv(uint8_t a) { return a; }

void f3poly_trim(F3Poly& p);
int f3poly_deg(const F3Poly& p);  // deg(0) == -1
F3Poly f3poly_add(const F3Poly& a, const F3Poly& b);
F3Poly f3poly_sub(const F3Poly& a, const F3Poly& b);
F3Poly f3poly_mul(const F3Poly& a, const F3Poly& b);
// Remainder of a modulo monic b.
F3Poly f3poly_rem(F3Poly a, const F3Poly& b);
F3Poly f3poly_gcd(F3Poly a, F3Poly b);  // monic gcd
F3Poly f3poly_pow3k_x_mod(const F3Poly& mod, unsigned k);  // x^(3^k) mod `mod`

bool f3poly_is_irreducible(const F3Poly& f);
// Some proper monic factor of a reducible monic f (smallest degree found).
std::optional<F3Poly> f3poly_find_factor(const F3Poly& f);
// Monic irreducible of degree n, first in the base-3 counter order on
// (c_0, c_1, ..., c_{n-1}).
F3Poly f3poly_first_irreducible(int n);

std::string f3poly_to_string(const F3Poly& p);  // digits low-to-high

}  // namespace g2c
