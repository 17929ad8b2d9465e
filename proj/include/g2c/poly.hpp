#pragma once

#include <random>
#include <vector>

#include "g2c/field.hpp"

namespace g2c {

// Dense univariate polynomials over a runtime field, low-to-high.
using FPoly = std::vector<FElem>;

void fpoly_trim(const Field& F, FPoly& p);
int fpoly_deg(const FPoly& p);
FPoly fpoly_from_f3(const Field& F, const F3Poly& p);
FPoly fpoly_x(const Field& F);
bool fpoly_eq(const FPoly& a, const FPoly& b);

FPoly fpoly_add(const Field& F, const FPoly& a, const FPoly& b);
FPoly fpoly_sub(const Field& F, const FPoly& a, const FPoly& b);
FPoly fpoly_mul(const Field& F, const FPoly& a, const FPoly& b);
FPoly fpoly_scale(const Field& F, const FPoly& a, const FElem& c);
// Division with remainder; divisor may be any nonzero polynomial.
void fpoly_divrem(const Field& F, FPoly a, const FPoly& b, FPoly* q, FPoly* r);
FPoly fpoly_rem(const Field& F, FPoly a, const FPoly& b);
FPoly fpoly_quot(const Field& F, FPoly a, const FPoly& b);
FPoly fpoly_monic(const Field& F, FPoly a);
FPoly fpoly_gcd(const Field& F, FPoly a, FPoly b);
// monic g = gcd(a,b) together with s,t such that g = a*s + b*t
FPoly fpoly_xgcd(const Field& F, FPoly a, FPoly b, FPoly* s, FPoly* t);
FPoly fpoly_deriv(const Field& F, const FPoly& a);
FElem fpoly_eval(const Field& F, const FPoly& a, const FElem& x);
FPoly fpoly_mulmod(const Field& F, const FPoly& a, const FPoly& b, const FPoly& mod);
FPoly fpoly_powmod(const Field& F, FPoly base, mpz_class e, const FPoly& mod);

// Map a polynomial through a field embedding coefficient-wise.
FPoly fpoly_map(const Embedding& emb, const FPoly& a);

// All roots of g in F with multiplicity (distinct-degree restriction to the
// linear part, then equal-degree splitting by quadratic characters).
// Deterministic for a given rng state; roots sorted lexicographically.
std::vector<FElem> fpoly_roots(const FieldPtr& F, const FPoly& g, std::mt19937_64& rng);

// r-th roots (r in {2,4}) of a nonzero element, searched over F, then a
// degree-2 extension, then degree-4 (r == 4 only). Returns the roots together
// with the field they live in (an extension of F, possibly F itself).
struct RootSet {
    ExtField where;                // field of the roots over F
    std::vector<FElem> roots;      // elements of where.field, sorted
};
RootSet rth_roots(const FieldPtr& F, const FElem& a, int r, std::mt19937_64& rng);

}  // namespace g2c
