#pragma once

#include <random>

#include "g2c/poly.hpp"

namespace g2c {

// Genus-2 curve y^2 = f(x) with f monic quintic and squarefree. Non-monic
// input quintics are rescaled to an isomorphic monic model (same Jacobian
// order and Frobenius charpoly).
struct Curve {
    FieldPtr F;
    FPoly f;
};

Curve make_curve_quintic(const FieldPtr& F, const FPoly& coeffs);
Curve make_curve_rosenhain(const FieldPtr& F, const FElem& e1, const FElem& e2,
                           const FElem& e3);

// Mumford representation (u, v): u monic of degree <= 2, deg v < deg u,
// u | v^2 - f. Identity is (1, 0).
struct Divisor {
    FPoly u, v;
};

Divisor jac_identity(const Curve& c);
bool jac_is_identity(const Curve& c, const Divisor& d);
bool jac_eq(const Divisor& a, const Divisor& b);

Divisor jac_add(const Curve& c, const Divisor& a, const Divisor& b);
Divisor jac_neg(const Curve& c, const Divisor& a);
Divisor jac_scalar_mul(const Curve& c, const mpz_class& k, const Divisor& a);

Divisor jac_random(const Curve& c, std::mt19937_64& rng);

// Cartier-Manin: for p = 3 the Hasse-Witt matrix is read off the quintic's
// coefficients; ordinary iff its determinant is nonzero.
bool ordinary_test(const Curve& c);

}  // namespace g2c
