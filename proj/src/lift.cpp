#include "g2c/lift.hpp"

#include <cassert>
#include <ctime>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

uint8_t f3add(uint8_t a, uint8_t b) { return static_cast<uint8_t>((a + b) % 3); }
uint8_t f3mul(uint8_t a, uint8_t b) { return static_cast<uint8_t>((a * b) % 3); }

// value at a higher precision; digits are already reduced, only the bound
// changes
WElem at_prec(WElem a, int prec) {
    a.prec = prec;
    return a;
}

}  // namespace

ArtinSchreierBase::ArtinSchreierBase(const FieldPtr& F,
                                     const std::vector<std::vector<FElem>>& A)
    : F_(F), k_(static_cast<int>(A.size())), n_(F->degree()), dim3_(k_ * n_) {
    // columns are indexed by (coordinate j, basis exponent b); the image of
    // eps = x^b in coordinate j is sigma^2(x^b) in row block j plus A[i][j] x^b
    // in every row block i
    std::vector<FElem> frob2(static_cast<size_t>(n_));
    for (int b = 0; b < n_; ++b) {
        FElem xb = F->zero();
        xb[static_cast<size_t>(b)] = 1;
        frob2[static_cast<size_t>(b)] = F->frobenius(xb, 2);
    }
    std::vector<std::vector<uint8_t>> M(
        static_cast<size_t>(dim3_), std::vector<uint8_t>(static_cast<size_t>(dim3_), 0));
    for (int j = 0; j < k_; ++j)
        for (int b = 0; b < n_; ++b) {
            int col = j * n_ + b;
            for (int r = 0; r < n_; ++r)
                M[static_cast<size_t>(j * n_ + r)][static_cast<size_t>(col)] =
                    frob2[static_cast<size_t>(b)][static_cast<size_t>(r)];
            FElem xb = F->zero();
            xb[static_cast<size_t>(b)] = 1;
            for (int i = 0; i < k_; ++i) {
                const FElem& aij = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (F->is_zero(aij)) continue;
                FElem prod = F->mul(aij, xb);
                for (int r = 0; r < n_; ++r) {
                    auto& cell = M[static_cast<size_t>(i * n_ + r)][static_cast<size_t>(col)];
                    cell = f3add(cell, prod[static_cast<size_t>(r)]);
                }
            }
        }

    // Gauss-Jordan over F_3 recording the transform applied to the identity
    trans_.assign(static_cast<size_t>(dim3_),
                  std::vector<uint8_t>(static_cast<size_t>(dim3_), 0));
    for (int i = 0; i < dim3_; ++i) trans_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    rref_ = std::move(M);
    pivot_col_.assign(static_cast<size_t>(dim3_), -1);
    int row = 0;
    std::vector<char> col_used(static_cast<size_t>(dim3_), 0);
    for (int col = 0; col < dim3_ && row < dim3_; ++col) {
        int p = -1;
        for (int r = row; r < dim3_; ++r)
            if (rref_[static_cast<size_t>(r)][static_cast<size_t>(col)]) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(rref_[static_cast<size_t>(p)], rref_[static_cast<size_t>(row)]);
        std::swap(trans_[static_cast<size_t>(p)], trans_[static_cast<size_t>(row)]);
        uint8_t inv = rref_[static_cast<size_t>(row)][static_cast<size_t>(col)];  // 1 or 2, self-inverse
        if (inv == 2)
            for (int c = 0; c < dim3_; ++c) {
                auto& a = rref_[static_cast<size_t>(row)][static_cast<size_t>(c)];
                a = f3mul(a, 2);
                auto& t = trans_[static_cast<size_t>(row)][static_cast<size_t>(c)];
                t = f3mul(t, 2);
            }
        for (int r = 0; r < dim3_; ++r) {
            if (r == row) continue;
            uint8_t f = rref_[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (!f) continue;
            uint8_t nf = static_cast<uint8_t>(3 - f);
            for (int c = 0; c < dim3_; ++c) {
                auto& a = rref_[static_cast<size_t>(r)][static_cast<size_t>(c)];
                a = f3add(a, f3mul(nf, rref_[static_cast<size_t>(row)][static_cast<size_t>(c)]));
                auto& t = trans_[static_cast<size_t>(r)][static_cast<size_t>(c)];
                t = f3add(t, f3mul(nf, trans_[static_cast<size_t>(row)][static_cast<size_t>(c)]));
            }
        }
        pivot_col_[static_cast<size_t>(row)] = col;
        col_used[static_cast<size_t>(col)] = 1;
        ++row;
    }
    for (int c = 0; c < dim3_; ++c)
        if (!col_used[static_cast<size_t>(c)]) free_cols_.push_back(c);
}

bool ArtinSchreierBase::solve(const std::vector<FElem>& w, std::vector<FElem>& eps) const {
    // right-hand side is -w
    std::vector<uint8_t> rhs(static_cast<size_t>(dim3_), 0);
    for (int j = 0; j < k_; ++j) {
        FElem nw = F_->neg(w[static_cast<size_t>(j)]);
        for (int r = 0; r < n_; ++r)
            rhs[static_cast<size_t>(j * n_ + r)] = nw[static_cast<size_t>(r)];
    }
    std::vector<uint8_t> t(static_cast<size_t>(dim3_), 0);
    for (int r = 0; r < dim3_; ++r) {
        uint8_t acc = 0;
        const auto& tr = trans_[static_cast<size_t>(r)];
        for (int c = 0; c < dim3_; ++c)
            acc = f3add(acc, f3mul(tr[static_cast<size_t>(c)], rhs[static_cast<size_t>(c)]));
        t[static_cast<size_t>(r)] = acc;
    }
    std::vector<uint8_t> x(static_cast<size_t>(dim3_), 0);
    for (int r = 0; r < dim3_; ++r) {
        if (pivot_col_[static_cast<size_t>(r)] >= 0)
            x[static_cast<size_t>(pivot_col_[static_cast<size_t>(r)])] = t[static_cast<size_t>(r)];
        else if (t[static_cast<size_t>(r)])
            return false;  // zero row with nonzero rhs
    }
    eps.assign(static_cast<size_t>(k_), F_->zero());
    for (int j = 0; j < k_; ++j)
        for (int r = 0; r < n_; ++r)
            eps[static_cast<size_t>(j)][static_cast<size_t>(r)] =
                x[static_cast<size_t>(j * n_ + r)];
    return true;
}

std::vector<WElem> solve_as_lifted(const WittRing& W, const ArtinSchreierBase& base,
                                   const WMatrix& A, const std::vector<WElem>& v,
                                   int m) {
    const size_t k = v.size();
    if (m == 1) {
        std::vector<FElem> wbar(k);
        for (size_t i = 0; i < k; ++i) wbar[i] = W.reduce(v[i]);
        std::vector<FElem> eps;
        if (!base.solve(wbar, eps))
            throw lift_inconsistent("Artin-Schreier base system has no solution");
        std::vector<WElem> out(k);
        for (size_t i = 0; i < k; ++i) out[i] = W.lift(eps[i], 1);
        return out;
    }
    int h = (m + 1) / 2;
    std::vector<WElem> vh(k);
    for (size_t i = 0; i < k; ++i) vh[i] = W.truncate(v[i], h);
    std::vector<WElem> d = solve_as_lifted(W, base, A, vh, h);
    // residual of the half-precision solution, exact at precision m
    std::vector<WElem> r(k);
    for (size_t i = 0; i < k; ++i) {
        WElem di = at_prec(d[i], m);
        WElem acc = W.add(W.frob(di, 2), v[i]);
        for (size_t j = 0; j < k; ++j)
            acc = W.add(acc, W.mul(W.truncate(A[i][j], m), at_prec(d[j], m)));
        if (W.valuation(acc) < h)
            throw internal_error("lift residual valuation did not reach half precision");
        r[i] = W.shift_down(acc, h);
    }
    std::vector<WElem> e = solve_as_lifted(W, base, A, r, m - h);
    std::vector<WElem> out(k);
    for (size_t i = 0; i < k; ++i)
        out[i] = W.add(at_prec(d[i], m),
                       W.mul_int(at_prec(e[i], m), W.pow3(h)));
    return out;
}

std::vector<WElem> witt_xy_values(const WittRing& W, const std::vector<WElem>& a,
                                  int prec) {
    std::vector<WElem> xy(kNumVars, W.zero(prec));
    for (int i = 0; i < 19; ++i) {
        WElem ai = W.truncate(a[static_cast<size_t>(i)], prec);
        xy[static_cast<size_t>(i)] = W.frob(ai, 2);
        xy[static_cast<size_t>(kXBase + i)] = ai;
    }
    return xy;
}

std::vector<WElem> LiftSystem::phi(const std::vector<WElem>& xy, int prec) const {
    WittEval R{*W, prec};
    const RelationSet& S = relation_set();
    std::vector<WElem> out;
    out.reserve(selected.size());
    for (const auto& r : selected) out.push_back(relation_eval(R, S, r, xy));
    return out;
}

WMatrix LiftSystem::d_y(const std::vector<WElem>& xy, int prec) const {
    WittEval R{*W, prec};
    const RelationSet& S = relation_set();
    WMatrix M(selected.size(), std::vector<WElem>(19, W->zero(prec)));
    for (size_t i = 0; i < selected.size(); ++i)
        for (int j = 0; j < 19; ++j)
            M[i][static_cast<size_t>(j)] = relation_deriv(R, S, selected[i], j, xy);
    return M;
}

WMatrix LiftSystem::d_x(const std::vector<WElem>& xy, int prec) const {
    WittEval R{*W, prec};
    const RelationSet& S = relation_set();
    WMatrix M(selected.size(), std::vector<WElem>(19, W->zero(prec)));
    for (size_t i = 0; i < selected.size(); ++i)
        for (int j = 0; j < 19; ++j)
            M[i][static_cast<size_t>(j)] = relation_deriv(R, S, selected[i], kXBase + j, xy);
    return M;
}

WMatrix wmat_mul(const WittRing& W, const WMatrix& A, const WMatrix& B) {
    size_t k = A.size();
    int prec = A[0][0].prec;
    WMatrix C(k, std::vector<WElem>(k, W.zero(prec)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            WElem acc = W.zero(prec);
            for (size_t l = 0; l < k; ++l) acc = W.add(acc, W.mul(A[i][l], B[l][j]));
            C[i][j] = acc;
        }
    return C;
}

std::vector<WElem> wmat_apply(const WittRing& W, const WMatrix& A,
                              const std::vector<WElem>& v) {
    size_t k = A.size();
    int prec = v[0].prec;
    std::vector<WElem> out(k, W.zero(prec));
    for (size_t i = 0; i < k; ++i) {
        WElem acc = W.zero(prec);
        for (size_t j = 0; j < v.size(); ++j)
            acc = W.add(acc, W.mul(W.truncate(A[i][j], prec), v[j]));
        out[i] = acc;
    }
    return out;
}

WMatrix wmat_inv(const WittRing& W, const WMatrix& A, int prec) {
    const FieldPtr& F = W.residue_field();
    size_t k = A.size();
    // residue inverse by Gauss-Jordan over the field
    std::vector<std::vector<FElem>> m(k, std::vector<FElem>(k)), inv(k, std::vector<FElem>(k, F->zero()));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) m[i][j] = W.reduce(W.truncate(A[i][j], 1));
        inv[i][i] = F->one();
    }
    for (size_t col = 0; col < k; ++col) {
        size_t p = col;
        while (p < k && F->is_zero(m[p][col])) ++p;
        if (p == k) throw internal_error("matrix not invertible modulo 3");
        std::swap(m[p], m[col]);
        std::swap(inv[p], inv[col]);
        FElem s = F->inv(m[col][col]);
        for (size_t c = 0; c < k; ++c) {
            m[col][c] = F->mul(m[col][c], s);
            inv[col][c] = F->mul(inv[col][c], s);
        }
        for (size_t r = 0; r < k; ++r) {
            if (r == col || F->is_zero(m[r][col])) continue;
            FElem f = m[r][col];
            for (size_t c = 0; c < k; ++c) {
                m[r][c] = F->sub(m[r][c], F->mul(f, m[col][c]));
                inv[r][c] = F->sub(inv[r][c], F->mul(f, inv[col][c]));
            }
        }
    }
    WMatrix X(k, std::vector<WElem>(k, W.zero(1)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) X[i][j] = W.lift(inv[i][j], 1);
    // Newton doubling: X <- X (2I - A X)
    int h = 1;
    while (h < prec) {
        h = std::min(2 * h, prec);
        WMatrix Ah(k, std::vector<WElem>(k, W.zero(h)));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) Ah[i][j] = W.truncate(A[i][j], h);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) X[i][j] = at_prec(X[i][j], h);
        WMatrix T = wmat_mul(W, Ah, X);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) {
                T[i][j] = W.neg(T[i][j]);
                if (i == j) T[i][j] = W.add(T[i][j], W.from_int(2, h));
            }
        X = wmat_mul(W, X, T);
    }
    return X;
}

LiftState canonical_lift(const ThetaPoint& t6, const std::vector<Relation>& selected,
                         int m, const std::function<void(const LiftTrace&)>& trace) {
    if (m < 1) throw input_error("lift precision must be at least 1");
    if (selected.size() != 19) throw internal_error("lift system needs 19 relations");
    const int mm = m + 1;  // guard digit
    WittRingPtr W = WittRing::make(t6.where.field, mm);
    LiftSystem sys{W, selected};

    std::vector<WElem> a(19);
    for (int i = 0; i < 19; ++i) a[static_cast<size_t>(i)] = W->lift(t6.a[static_cast<size_t>(i)], 1);

    {
        auto xy = witt_xy_values(*W, a, 1);
        for (const auto& f : sys.phi(xy, 1))
            if (!W->is_zero(f))
                throw lift_inconsistent("candidate does not satisfy the lift system modulo 3");
    }

    // base solver from Abar = (D_Y^-1 D_X) mod 3; constant along the lift
    std::unique_ptr<ArtinSchreierBase> base;
    {
        auto xy = witt_xy_values(*W, a, 1);
        WMatrix DY = sys.d_y(xy, 1), DX = sys.d_x(xy, 1);
        WMatrix Abar = wmat_mul(*W, wmat_inv(*W, DY, 1), DX);
        const FieldPtr& F = W->residue_field();
        std::vector<std::vector<FElem>> Af(19, std::vector<FElem>(19));
        for (size_t i = 0; i < 19; ++i)
            for (size_t j = 0; j < 19; ++j) Af[i][j] = W->reduce(Abar[i][j]);
        base = std::make_unique<ArtinSchreierBase>(F, Af);
    }

    int h = 1;
    while (h < mm) {
        clock_t c0 = clock();
        int h2 = std::min(2 * h, mm);
        for (auto& ai : a) ai = at_prec(ai, h2);
        auto xy = witt_xy_values(*W, a, h2);
        auto phi = sys.phi(xy, h2);
        int val = h2;
        for (const auto& f : phi) val = std::min(val, W->valuation(f));
        if (val < h) throw internal_error("lift residual valuation below current precision");
        int dp = h2 - h;
        std::vector<WElem> v(19);
        for (size_t i = 0; i < 19; ++i) v[i] = W->truncate(W->shift_down(phi[i], h), dp);
        WMatrix DY = sys.d_y(xy, dp), DX = sys.d_x(xy, dp);
        WMatrix DYi = wmat_inv(*W, DY, dp);
        WMatrix A = wmat_mul(*W, DYi, DX);
        std::vector<WElem> w = wmat_apply(*W, DYi, v);
        std::vector<WElem> delta = solve_as_lifted(*W, *base, A, w, dp);
        for (size_t i = 0; i < 19; ++i)
            a[i] = W->add(a[i], W->mul_int(at_prec(delta[i], h2), W->pow3(h)));
        if (trace) trace({h2, val, static_cast<double>(clock() - c0) / CLOCKS_PER_SEC});
        h = h2;
    }

    LiftState out;
    out.prec = m;
    out.a.resize(19);
    for (size_t i = 0; i < 19; ++i) out.a[i] = W->truncate(a[i], m);
    return out;
}

}  // namespace g2c
