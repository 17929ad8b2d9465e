#include "g2c/witt3.hpp"

#include <algorithm>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

const mpz_class& WittRing::pow3(int k) const {
    if (k < 0 || k > mmax_) throw internal_error("pow3 index out of range");
    return pow3_[static_cast<size_t>(k)];
}

WElem WittRing::zero(int prec) const { return WElem{std::vector<mpz_class>(n_, 0), prec}; }

WElem WittRing::one(int prec) const {
    WElem e = zero(prec);
    e.c[0] = 1;
    return e;
}

WElem WittRing::from_int(const mpz_class& v, int prec) const {
    WElem e = zero(prec);
    e.c[0] = mod_pos(v, pow3(prec));
    return e;
}

WElem WittRing::lift(const FElem& a, int prec) const {
    WElem e = zero(prec);
    for (int i = 0; i < n_; ++i) e.c[i] = a[i];
    return e;
}

FElem WittRing::reduce(const WElem& a) const {
    FElem r(n_);
    for (int i = 0; i < n_; ++i) r[i] = static_cast<uint8_t>(mpz_class(a.c[i] % 3).get_ui());
    return r;
}

bool WittRing::is_zero(const WElem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](const mpz_class& x) { return x == 0; });
}

int WittRing::valuation(const WElem& a) const {
    int v = a.prec;
    for (const auto& x : a.c) {
        if (x == 0) continue;
        mpz_class tmp;
        int k = static_cast<int>(
            mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), mpz_class(3).get_mpz_t()));
        v = std::min(v, k);
    }
    return v;
}

WElem WittRing::reduce_poly(std::vector<mpz_class> p, int prec) const {
    for (size_t i = p.size(); i-- > static_cast<size_t>(n_);) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        p[i] = 0;
        for (int j = 0; j < n_; ++j)
            if (f_[j] != 0) p[i - n_ + j] -= c * f_[j];
    }
    p.resize(n_, 0);
    const mpz_class& m = pow3(prec);
    for (auto& x : p) x = mod_pos(x, m);
    return WElem{std::move(p), prec};
}

WElem WittRing::add(const WElem& a, const WElem& b) const {
    int prec = std::min(a.prec, b.prec);
    const mpz_class& m = pow3(prec);
    WElem r = zero(prec);
    for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(a.c[i] + b.c[i], m);
    return r;
}

WElem WittRing::sub(const WElem& a, const WElem& b) const {
    int prec = std::min(a.prec, b.prec);
    const mpz_class& m = pow3(prec);
    WElem r = zero(prec);
    for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(a.c[i] - b.c[i], m);
    return r;
}

WElem WittRing::neg(const WElem& a) const {
    const mpz_class& m = pow3(a.prec);
    WElem r = zero(a.prec);
    for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(-a.c[i], m);
    return r;
}

WElem WittRing::mul(const WElem& a, const WElem& b) const {
    int prec = std::min(a.prec, b.prec);
    std::vector<mpz_class> p(2 * n_ - 1, 0);
    for (int i = 0; i < n_; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n_; ++j)
            if (b.c[j] != 0) p[i + j] += a.c[i] * b.c[j];
    }
    return reduce_poly(std::move(p), prec);
}

WElem WittRing::mul_int(const WElem& a, const mpz_class& k) const {
    const mpz_class& m = pow3(a.prec);
    WElem r = zero(a.prec);
    for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(a.c[i] * k, m);
    return r;
}

WElem WittRing::inv(const WElem& a) const {
    FElem abar = reduce(a);
    if (res_->is_zero(abar)) throw math_refusal("inverse of a non-unit in Z_q");
    WElem x = lift(res_->inv(abar), a.prec);
    int p = 1;
    // Newton: x <- x(2 - a x), doubling the correct precision each round.
    // The old iterate is reused as a representative at the new precision.
    while (p < a.prec) {
        p = std::min(2 * p, a.prec);
        x.prec = p;
        WElem t = mul(truncate(a, p), x);
        WElem two = from_int(2, p);
        x = mul(x, sub(two, t));
    }
    return x;
}

WElem WittRing::shift_down(const WElem& a, int k) const {
    if (k == 0) return a;
    if (k < 0 || k >= a.prec) throw internal_error("shift_down: bad shift amount");
    const mpz_class& d = pow3(k);
    WElem r = zero(a.prec - k);
    for (int i = 0; i < n_; ++i) {
        mpz_class q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.c[i].get_mpz_t(), d.get_mpz_t());
        if (rem != 0)
            throw internal_error("shift_down: coefficient not divisible by 3^k (broken invariant)");
        r.c[i] = q;
    }
    return r;
}

WElem WittRing::truncate(const WElem& a, int prec) const {
    if (prec >= a.prec) return a;
    const mpz_class& m = pow3(prec);
    WElem r = zero(prec);
    for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(a.c[i], m);
    return r;
}

WElem WittRing::frob(const WElem& a, unsigned k) const {
    WElem r = a;
    unsigned left = k % static_cast<unsigned>(n_ == 1 ? 1 : n_);
    if (n_ == 1) return r;
    while (left >= 2) {
        WElem s = zero(r.prec);
        for (int i = 0; i < n_; ++i)
            if (r.c[i] != 0) s = add(s, mul_int(truncate(sigma2_pows_[i], r.prec), r.c[i]));
        r = s;
        left -= 2;
    }
    if (left == 1) {
        WElem s = zero(r.prec);
        for (int i = 0; i < n_; ++i)
            if (r.c[i] != 0) s = add(s, mul_int(truncate(sigma_pows_[i], r.prec), r.c[i]));
        r = s;
    }
    return r;
}

mpz_class WittRing::norm(const WElem& a) const {
    // Multiplication matrix columns a * x^j mod f, entries lifted to Z.
    std::vector<std::vector<mpz_class>> M(n_, std::vector<mpz_class>(n_));
    WElem col = a;
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) M[i][j] = col.c[i];
        if (j + 1 < n_) {
            std::vector<mpz_class> shifted(n_ + 1, 0);
            for (int i = 0; i < n_; ++i) shifted[i + 1] = col.c[i];
            col = reduce_poly(std::move(shifted), a.prec);
        }
    }
    // Bareiss fraction-free elimination (exact over Z).
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k + 1 < n_; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n_; ++i)
                if (M[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n_; ++i) {
            for (int j = k + 1; j < n_; ++j) {
                mpz_class t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    mpz_class det = M[n_ - 1][n_ - 1];
    if (sign < 0) det = -det;
    return mod_pos(det, pow3(a.prec));
}

mpz_class WittRing::norm_by_conjugates(const WElem& a) const {
    WElem prod = one(a.prec);
    WElem conj = a;
    for (int k = 0; k < n_; ++k) {
        prod = mul(prod, conj);
        if (k + 1 < n_) conj = frob(conj, 1);
    }
    for (int i = 1; i < n_; ++i)
        if (prod.c[i] != 0)
            throw internal_error("norm_by_conjugates: conjugate product is not in Z_3");
    return prod.c[0];
}

WittRingPtr WittRing::make(const FieldPtr& residue_field, int mmax) {
    if (mmax < 1) throw input_error("Witt precision must be >= 1");
    auto ring = std::shared_ptr<WittRing>(new WittRing());
    ring->res_ = residue_field;
    ring->n_ = residue_field->degree();
    ring->mmax_ = mmax;
    ring->pow3_.resize(static_cast<size_t>(mmax) + 1);
    ring->pow3_[0] = 1;
    for (int k = 1; k <= mmax; ++k) ring->pow3_[k] = ring->pow3_[k - 1] * 3;
    const F3Poly& fbar = residue_field->modulus();
    ring->f_.assign(fbar.begin(), fbar.end());

    const int n = ring->n_;
    // Newton iteration for sigma(x): the root of f congruent to x^3 mod 3.
    WElem z = ring->lift(residue_field->frobenius(residue_field->gen()), mmax);
    z = ring->truncate(z, 1);
    auto eval_poly = [&](const std::vector<mpz_class>& coeffs, const WElem& at,
                         int prec) -> WElem {
        WElem r = ring->zero(prec);
        WElem att = ring->truncate(at, prec);
        for (size_t i = coeffs.size(); i-- > 0;) {
            r = ring->mul(r, att);
            if (coeffs[i] != 0) r = ring->add(r, ring->from_int(coeffs[i], prec));
        }
        return r;
    };
    std::vector<mpz_class> fprime(n);
    for (int i = 1; i <= n; ++i) fprime[i - 1] = ring->f_[i] * i;
    int p = 1;
    while (p < mmax) {
        p = std::min(2 * p, mmax);
        WElem zc = ring->truncate(z, p);
        // precision of the stored z only constrains lower digits; re-lift
        zc.prec = p;
        WElem fz = eval_poly(ring->f_, zc, p);
        WElem dfz = eval_poly(fprime, zc, p);
        WElem step;
        try {
            step = ring->mul(fz, ring->inv(dfz));
        } catch (const math_refusal&) {
            throw internal_error("sigma Newton iteration hit a non-unit derivative "
                                 "(corrupted modulus)");
        }
        z = ring->sub(zc, step);
    }
    z.prec = mmax;
    {
        WElem resid = eval_poly(ring->f_, z, mmax);
        if (!ring->is_zero(resid))
            throw internal_error("sigma Newton iteration did not converge");
    }
    ring->sigma_pows_.resize(n);
    ring->sigma_pows_[0] = ring->one(mmax);
    for (int j = 1; j < n; ++j) ring->sigma_pows_[j] = ring->mul(ring->sigma_pows_[j - 1], z);

    // sigma^2(x) = sigma applied to sigma(x).
    ring->sigma2_pows_.resize(n);
    {
        WElem z2 = ring->zero(mmax);
        for (int i = 0; i < n; ++i)
            if (z.c[i] != 0) z2 = ring->add(z2, ring->mul_int(ring->sigma_pows_[i], z.c[i]));
        ring->sigma2_pows_[0] = ring->one(mmax);
        for (int j = 1; j < n; ++j) ring->sigma2_pows_[j] = ring->mul(ring->sigma2_pows_[j - 1], z2);
    }
    return ring;
}

}  // namespace g2c
