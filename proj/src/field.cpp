#include "g2c/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "g2c/errors.hpp"
#include "g2c/poly.hpp"

namespace g2c {

Field::Field(int n, F3Poly mod) : n_(n), mod_(std::move(mod)) {}

FieldPtr Field::make(int n, const F3Poly& modulus) {
    if (n < 1) throw input_error("field degree must be >= 1");
    F3Poly m = modulus;
    f3poly_trim(m);
    if (f3poly_deg(m) != n) throw input_error("modulus degree does not match n");
    if (m.back() != 1) throw input_error("modulus must be monic");
    if (!f3poly_is_irreducible(m)) {
        auto factor = f3poly_find_factor(m);
        std::string msg = "modulus is reducible over F_3";
        if (factor) msg += ", factor " + f3poly_to_string(*factor);
        throw input_error(msg);
    }
    return FieldPtr(new Field(n, std::move(m)));
}

FieldPtr Field::make(int n) {
    static std::map<int, FieldPtr> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    FieldPtr f(new Field(n, f3poly_first_irreducible(n)));
    cache[n] = f;
    return f;
}

mpz_class Field::order() const {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), 3, static_cast<unsigned long>(n_));
    return q;
}

FElem Field::one() const {
    FElem e(n_, 0);
    e[0] = 1;
    return e;
}

FElem Field::from_int(int v) const {
    FElem e(n_, 0);
    e[0] = static_cast<uint8_t>(((v % 3) + 3) % 3);
    return e;
}

FElem Field::from_f3poly(const F3Poly& p) const {
    F3Poly r = f3poly_rem(p, mod_);
    r.resize(n_, 0);
    return r;
}

bool Field::is_zero(const FElem& a) const {
    return std::all_of(a.begin(), a.end(), [](uint8_t c) { return c == 0; });
}

bool Field::is_one(const FElem& a) const {
    if (a.empty() || a[0] != 1) return false;
    return std::all_of(a.begin() + 1, a.end(), [](uint8_t c) { return c == 0; });
}

FElem Field::add(const FElem& a, const FElem& b) const {
    FElem r(n_);
    for (int i = 0; i < n_; ++i) r[i] = f3_add(a[i], b[i]);
    return r;
}

FElem Field::sub(const FElem& a, const FElem& b) const {
    FElem r(n_);
    for (int i = 0; i < n_; ++i) r[i] = f3_sub(a[i], b[i]);
    return r;
}

FElem Field::neg(const FElem& a) const {
    FElem r(n_);
    for (int i = 0; i < n_; ++i) r[i] = f3_neg(a[i]);
    return r;
}

FElem Field::mul(const FElem& a, const FElem& b) const {
    F3Poly r = f3poly_rem(f3poly_mul(a, b), mod_);
    r.resize(n_, 0);
    return r;
}

namespace {

// Extended gcd over F_3[x]: returns (g, s) with s*a == g mod m, g = gcd(a, m).
std::pair<F3Poly, F3Poly> f3poly_half_xgcd(F3Poly a, F3Poly m) {
    F3Poly r0 = std::move(m), r1 = std::move(a);
    f3poly_trim(r0);
    f3poly_trim(r1);
    F3Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        F3Poly q;
        F3Poly r2 = r0;
        int d1 = f3poly_deg(r1);
        uint8_t linv = f3_inv(r1.back());
        q.assign(std::max(0, f3poly_deg(r0) - d1 + 1), 0);
        while (f3poly_deg(r2) >= d1) {
            int k = f3poly_deg(r2) - d1;
            uint8_t c = f3_mul(r2.back(), linv);
            q[k] = f3_add(q[k], c);
            for (int i = 0; i <= d1; ++i) r2[k + i] = f3_sub(r2[k + i], f3_mul(c, r1[i]));
            f3poly_trim(r2);
        }
        F3Poly s2 = f3poly_sub(s0, f3poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};
}

}  // namespace

FElem Field::inv(const FElem& a) const {
    if (is_zero(a)) throw math_refusal("division by zero in F_q");
    auto [g, s] = f3poly_half_xgcd(a, mod_);
    // g is a nonzero constant since the modulus is irreducible.
    uint8_t c = f3_inv(g[0]);
    F3Poly r = f3poly_rem(s, mod_);
    for (auto& x : r) x = f3_mul(x, c);
    r.resize(n_, 0);
    return r;
}

FElem Field::pow(FElem a, mpz_class e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    FElem r = one();
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = nbits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

FElem Field::frobenius(const FElem& a, unsigned k) const {
    FElem r = a;
    for (unsigned t = 0; t < k; ++t) {
        F3Poly cube(3 * n_ - 2 > 0 ? 3 * n_ - 2 : 1, 0);
        for (int i = 0; i < n_; ++i) cube[3 * i] = r[i];
        r = f3poly_rem(std::move(cube), mod_);
        r.resize(n_, 0);
    }
    return r;
}

FElem Field::random(std::mt19937_64& rng) const {
    FElem r(n_);
    for (int i = 0; i < n_; ++i) r[i] = static_cast<uint8_t>(rng() % 3);
    return r;
}

std::string Field::to_string(const FElem& a) const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i) s[i] = static_cast<char>('0' + a[i]);
    return s;
}

FElem Field::from_string(const std::string& s) const {
    F3Poly p;
    p.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c > '2') throw input_error("field element digits must be 0, 1 or 2");
        p.push_back(static_cast<uint8_t>(c - '0'));
    }
    return from_f3poly(p);
}

Embedding::Embedding(FieldPtr from, FieldPtr to, FElem x_image)
    : from_(std::move(from)), to_(std::move(to)), x_image_(std::move(x_image)) {
    const int n = from_->degree();
    const int N = to_->degree();
    basis_images_.resize(n);
    FElem p = to_->one();
    for (int j = 0; j < n; ++j) {
        basis_images_[j] = p;
        p = to_->mul(p, x_image_);
    }
    // Row-reduce the N x n matrix of basis images with a recorded transform,
    // so down() is a matrix-vector product plus a verification.
    std::vector<std::vector<uint8_t>> M(N, std::vector<uint8_t>(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < N; ++i) M[i][j] = basis_images_[j][i];
    rref_.assign(N, std::vector<uint8_t>(N, 0));
    for (int i = 0; i < N; ++i) rref_[i][i] = 1;
    pivot_row_.assign(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < N; ++col) {
        int pr = -1;
        for (int i = row; i < N; ++i)
            if (M[i][col] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[pr], M[row]);
        std::swap(rref_[pr], rref_[row]);
        uint8_t inv = f3_inv(M[row][col]);
        for (int j = 0; j < n; ++j) M[row][j] = f3_mul(M[row][j], inv);
        for (int j = 0; j < N; ++j) rref_[row][j] = f3_mul(rref_[row][j], inv);
        for (int i = 0; i < N; ++i) {
            if (i == row || M[i][col] == 0) continue;
            uint8_t c = M[i][col];
            for (int j = 0; j < n; ++j) M[i][j] = f3_sub(M[i][j], f3_mul(c, M[row][j]));
            for (int j = 0; j < N; ++j) rref_[i][j] = f3_sub(rref_[i][j], f3_mul(c, rref_[row][j]));
        }
        pivot_row_[col] = row;
        ++row;
    }
}

FElem Embedding::up(const FElem& a) const {
    FElem r = to_->zero();
    for (int j = 0; j < from_->degree(); ++j) {
        if (a[j] == 0) continue;
        for (int i = 0; i < to_->degree(); ++i)
            r[i] = f3_add(r[i], f3_mul(a[j], basis_images_[j][i]));
    }
    return r;
}

bool Embedding::down(const FElem& a, FElem* out) const {
    const int N = to_->degree();
    std::vector<uint8_t> t(N, 0);
    for (int i = 0; i < N; ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < N; ++j) acc += rref_[i][j] * a[j];
        t[i] = static_cast<uint8_t>(acc % 3);
    }
    FElem c(from_->degree(), 0);
    for (int col = 0; col < from_->degree(); ++col)
        if (pivot_row_[col] >= 0) c[col] = t[pivot_row_[col]];
    if (up(c) != a) return false;
    if (out) *out = std::move(c);
    return true;
}

bool Embedding::in_subfield(const FElem& a) const { return down(a, nullptr); }

ExtField extend_field(const FieldPtr& base, int d) {
    static std::map<std::pair<const Field*, int>, ExtField> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find({base.get(), d});
        if (it != cache.end()) return it->second;
    }
    if (d < 1) throw input_error("extension degree must be >= 1");
    ExtField ext;
    ext.rel_degree = d;
    if (d == 1) {
        ext.field = base;
        ext.emb = std::make_shared<Embedding>(base, base, base->gen());
    } else {
        FieldPtr big = Field::make(base->degree() * d);
        // The embedding sends x to a root of the base modulus in the big
        // field; the lexicographically smallest root makes it deterministic.
        FPoly modpoly = fpoly_from_f3(*big, base->modulus());
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (uint64_t(base->degree()) << 16) ^ uint64_t(d));
        std::vector<FElem> roots = fpoly_roots(big, modpoly, rng);
        if (roots.empty()) throw internal_error("base modulus has no root in extension field");
        ext.field = big;
        ext.emb = std::make_shared<Embedding>(base, big, roots.front());
    }
    std::lock_guard<std::mutex> lk(mtx);
    cache[{base.get(), d}] = ext;
    return ext;
}

}  // namespace g2c
