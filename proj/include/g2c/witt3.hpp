#pragma once

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "g2c/field.hpp"

namespace g2c {

class WittRing;
using WittRingPtr = std::shared_ptr<const WittRing>;

// Element of Z_q = Z_3[x]/(f) truncated modulo 3^prec. Coefficients are kept
// reduced into [0, 3^prec).
struct WElem {
    std::vector<mpz_class> c;
    int prec = 0;
};

// Z_3[x]/(f) at working precision mmax, where f is the {0,1,2}-coefficient
// lift of the residue field modulus. Stores sigma(x) (the lifted Frobenius
// image of x) and its powers, plus the sigma^2 powers used by the lift.
class WittRing {
  public:
    static WittRingPtr make(const FieldPtr& residue_field, int mmax);

    const FieldPtr& residue_field() const { return res_; }
    int degree() const { return n_; }
    int max_precision() const { return mmax_; }
    const mpz_class& pow3(int k) const;  // 3^k for 0 <= k <= mmax

    WElem zero(int prec) const;
    WElem one(int prec) const;
    WElem from_int(const mpz_class& v, int prec) const;
    // Teichmueller-free lift: digits {0,1,2} of a residue-field element.
    WElem lift(const FElem& a, int prec) const;
    FElem reduce(const WElem& a) const;  // mod 3

    bool is_zero(const WElem& a) const;
    // 3-adic valuation of a as known at its precision (min over coefficients);
    // returns a.prec if a == 0 mod 3^prec.
    int valuation(const WElem& a) const;

    WElem add(const WElem& a, const WElem& b) const;
    WElem sub(const WElem& a, const WElem& b) const;
    WElem neg(const WElem& a) const;
    WElem mul(const WElem& a, const WElem& b) const;
    WElem mul_int(const WElem& a, const mpz_class& k) const;
    WElem inv(const WElem& a) const;  // requires a unit (a mod 3 != 0)
    // Exact division by 3^k; hard error if any coefficient is not divisible.
    // Result precision drops by k.
    WElem shift_down(const WElem& a, int k) const;
    WElem truncate(const WElem& a, int prec) const;

    // sigma^k; sigma is the unique lift of the 3-power Frobenius.
    WElem frob(const WElem& a, unsigned k) const;

    // Norm_{Z_q/Z_3} via the determinant of the multiplication matrix,
    // computed exactly over Z (Bareiss) and reduced mod 3^prec.
    mpz_class norm(const WElem& a) const;
    // Test oracle: product of all n sigma-conjugates (must be a constant).
    mpz_class norm_by_conjugates(const WElem& a) const;

  private:
    WittRing() = default;
    WElem reduce_poly(std::vector<mpz_class> p, int prec) const;

    FieldPtr res_;
    int n_ = 0;
    int mmax_ = 0;
    std::vector<mpz_class> f_;       // monic, size n+1, coefficients in {0,1,2}
    std::vector<mpz_class> pow3_;    // 3^0 .. 3^mmax
    std::vector<WElem> sigma_pows_;   // sigma(x)^j, j = 0..n-1, at mmax
    std::vector<WElem> sigma2_pows_;  // sigma^2(x)^j
};

}  // namespace g2c
