#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "g2c/f3poly.hpp"

namespace g2c {

// F_{3^n} = F_3[x]/(fbar), elements as coefficient vectors of fixed length n.
// A Field object is immutable after construction and safe to share.
class Field;
using FieldPtr = std::shared_ptr<const Field>;

using FElem = std::vector<uint8_t>;

class Field {
  public:
    // modulus must be monic irreducible of degree n; throws input_error
    // otherwise, naming a proper factor when one was found.
    static FieldPtr make(int n, const F3Poly& modulus);
    static FieldPtr make(int n);  // first monic irreducible of degree n

    int degree() const { return n_; }
    const F3Poly& modulus() const { return mod_; }
    mpz_class order() const;  // 3^n

    FElem zero() const { return FElem(n_, 0); }
    FElem one() const;
    FElem from_int(int v) const;             // image of an integer
    FElem from_f3poly(const F3Poly& p) const;  // reduction mod fbar
    FElem gen() const { return from_f3poly({0, 1}); }

    bool is_zero(const FElem& a) const;
    bool is_one(const FElem& a) const;

    FElem add(const FElem& a, const FElem& b) const;
    FElem sub(const FElem& a, const FElem& b) const;
    FElem neg(const FElem& a) const;
    FElem mul(const FElem& a, const FElem& b) const;
    FElem square(const FElem& a) const { return mul(a, a); }
    FElem inv(const FElem& a) const;  // throws math_refusal on 0
    FElem pow(FElem a, mpz_class e) const;

    // a^(3^k); k = degree() is the identity.
    FElem frobenius(const FElem& a, unsigned k = 1) const;

    FElem random(std::mt19937_64& rng) const;

    std::string to_string(const FElem& a) const;  // digits low-to-high
    FElem from_string(const std::string& s) const;

  private:
    Field(int n, F3Poly mod);
    int n_;
    F3Poly mod_;  // size n+1, monic
};

// Ring embedding F_{3^n} -> F_{3^N} (n | N) fixing F_3, determined by the
// image of x. Supports moving elements both ways.
class Embedding {
  public:
    Embedding(FieldPtr from, FieldPtr to, FElem x_image);

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }

    FElem up(const FElem& a) const;
    // Preimage if a lies in the subfield image.
    bool down(const FElem& a, FElem* out) const;
    bool in_subfield(const FElem& a) const;

  private:
    FieldPtr from_, to_;
    FElem x_image_;
    // RREF solver data for the F_3-linear map F_3^n -> F_3^N.
    std::vector<std::vector<uint8_t>> basis_images_;  // column-major, N x n
    std::vector<std::vector<uint8_t>> rref_;          // augmented-elimination record
    std::vector<int> pivot_row_;
};

// Composite-degree extension of a base field with its embedding.
struct ExtField {
    FieldPtr field;
    std::shared_ptr<const Embedding> emb;  // base -> field
    int rel_degree = 1;
};

// Builds F_{3^(n*d)} over `base` with a deterministic modulus and embedding.
// Results are memoized per (base, d).
ExtField extend_field(const FieldPtr& base, int d);

}  // namespace g2c
