#pragma once

#include <random>
#include <vector>

#include "g2c/field.hpp"

namespace g2c {

// Exponent vector, one entry per variable.
using Mono = std::vector<uint16_t>;

enum class MonoOrder { lex, degrevlex };

// Sparse multivariate polynomial. Terms are kept normalized: combined,
// zero-free, sorted descending in the order the polynomial was built with.
struct MPoly {
    int nv = 0;
    std::vector<std::pair<Mono, FElem>> t;

    bool is_zero() const { return t.empty(); }
};

// true if a < b in the given order
bool mono_less(MonoOrder ord, const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_div(const Mono& b, const Mono& a);      // b / a, requires a | b
Mono mono_lcm(const Mono& a, const Mono& b);

MPoly mp_make(const Field& F, int nv, std::vector<std::pair<Mono, FElem>> terms,
              MonoOrder ord);
MPoly mp_zero(int nv);
MPoly mp_const(const Field& F, int nv, const FElem& c);
MPoly mp_var(const Field& F, int nv, int i);

MPoly mp_add(const Field& F, const MPoly& a, const MPoly& b, MonoOrder ord);
MPoly mp_sub(const Field& F, const MPoly& a, const MPoly& b, MonoOrder ord);
MPoly mp_mul(const Field& F, const MPoly& a, const MPoly& b, MonoOrder ord);
MPoly mp_scale(const Field& F, const MPoly& a, const FElem& c);
MPoly mp_monic(const Field& F, const MPoly& a);

FElem mp_eval(const Field& F, const MPoly& a, const std::vector<FElem>& x);
// Substitutes values for variables i >= first_fixed, leaving the rest.
MPoly mp_substitute_tail(const Field& F, const MPoly& a, int first_fixed,
                         const std::vector<FElem>& tail, MonoOrder ord);
MPoly mp_map(const Embedding& emb, const MPoly& a);

// Full normal form of f modulo basis (every term reduced).
MPoly mp_reduce(const Field& F, const MPoly& f, const std::vector<MPoly>& basis,
                MonoOrder ord);

// Reduced Groebner basis. Inconsistent ideals give {1}. Exceeding the S-pair
// budget throws rather than spinning.
std::vector<MPoly> buchberger(const FieldPtr& F, std::vector<MPoly> gens,
                              MonoOrder ord, long pair_budget = 200000);

bool gb_is_zero_dimensional(const std::vector<MPoly>& gb);

// Order conversion for a zero-dimensional reduced degrevlex basis into the
// reduced lex basis (FGLM): linear algebra in the finite quotient instead of
// a lex Buchberger run.
std::vector<MPoly> fglm_to_lex(const FieldPtr& F, const std::vector<MPoly>& drl_gb);

// Reduced lex basis by the cheapest route: degrevlex Buchberger first, then
// conversion when the ideal is zero dimensional, direct lex otherwise.
std::vector<MPoly> lex_groebner(const FieldPtr& F, const std::vector<MPoly>& gens,
                                long pair_budget = 200000);

struct VarietyPoint {
    std::vector<FElem> coords;  // over `where.field` of the solution
    int min_degree = 1;         // smallest d with all coordinates in F_{q^d}
};

struct VarietySolution {
    ExtField where;  // extension of the base field the points live in
    std::vector<VarietyPoint> points;
};

// Solves a zero-dimensional lex basis by back-substitution, trying the given
// extension degrees in increasing order (non-divisors of 48 are dropped) and
// stopping at the first degree with a nonempty solution set.
VarietySolution variety_zero_dim(const FieldPtr& base, const std::vector<MPoly>& gb,
                                 std::vector<int> search_degrees,
                                 std::mt19937_64& rng);

}  // namespace g2c
