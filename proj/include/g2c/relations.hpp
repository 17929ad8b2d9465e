#pragma once

#include <array>
#include <cstdint>

#include "g2c/polysys.hpp"
#include "g2c/witt3.hpp"

namespace g2c {

// Theta indices live in (Z/6Z)^2, packed as 6*i + j. The subgroup Z_2 embeds
// as {0,3}^2 and Z_3 as the even pairs.
constexpr int tidx(int i, int j) { return 6 * i + j; }
inline int tidx_add(int a, int b) { return tidx(((a / 6) + (b / 6)) % 6, ((a % 6) + (b % 6)) % 6); }
inline int tidx_neg(int a) { return tidx((6 - a / 6) % 6, (6 - a % 6) % 6); }
inline int tidx_sub(int a, int b) { return tidx_add(a, tidx_neg(b)); }
inline int tidx_mul(int k, int a) { return tidx((k * (a / 6)) % 6, (k * (a % 6)) % 6); }
inline bool tidx_in_z2(int a) { return a / 6 % 3 == 0 && a % 6 % 3 == 0; }
inline bool tidx_in_z3(int a) { return a / 6 % 2 == 0 && a % 6 % 2 == 0; }

// the paper's ordered 19-element index set
const std::array<int, 19>& index_set_U();
// canonical variable for an index: position in U of u or -u; -1 means index 00
// (the normalized constant)
int theta_var(int code);

// variable numbering used by all relation machinery: 0..18 are Y_u in U order,
// 19..37 are X_u
constexpr int kNumVars = 38;
constexpr int kXBase = 19;

// sum of coef[i] * val(v[i][0]) * val(v[i][1]); var id -1 stands for 1
struct BiForm {
    std::vector<std::array<int16_t, 2>> v;
    std::vector<uint8_t> c;
};

enum class RelFamily : uint8_t { riemann, corr_a, corr_b };

// forms[f1a]*forms[f1b] - forms[f2a]*forms[f2b]; factor index -1 means 1
struct Relation {
    RelFamily family;
    int32_t f1a, f1b, f2a, f2b;
};

struct RelationSet {
    std::vector<BiForm> forms;
    std::vector<Relation> riemann;
    std::vector<Relation> corr;  // the 6 corr_a relations first, then corr_b
    size_t corr_a_count = 0;
    long quadruple_class_count = 0;  // equivalent-quadruple classes over Z_6^4
};

// built once on first use; generation is fully deterministic
const RelationSet& relation_set();

// the printed 32-term special theta relation in the a_u (as Y-variable ids)
struct QuarticTerm {
    std::array<int8_t, 4> v;  // Y-var ids, -1 padding for a_00 factors
    uint8_t c;
};
const std::vector<QuarticTerm>& special_relation();

// the four printed quartic equations in (Y10, Y13, Y20, Y23), instantiated at
// the 2-theta values; variable order of the returned MPolys is exactly that
std::vector<MPoly> small_system(const FieldPtr& F, const FElem& a00, const FElem& a03,
                                const FElem& a30, const FElem& a33);

// ---- generic evaluation over a coefficient ring ----

struct FieldEval {
    const Field& F;
    using V = FElem;
    V zero() const { return F.zero(); }
    V one() const { return F.one(); }
    V add(const V& a, const V& b) const { return F.add(a, b); }
    V sub(const V& a, const V& b) const { return F.sub(a, b); }
    V mul(const V& a, const V& b) const { return F.mul(a, b); }
    V small(uint8_t k) const { return F.from_int(k); }
    bool is_zero(const V& a) const { return F.is_zero(a); }
};

struct WittEval {
    const WittRing& W;
    int prec;
    using V = WElem;
    V zero() const { return W.zero(prec); }
    V one() const { return W.one(prec); }
    V add(const V& a, const V& b) const { return W.add(a, b); }
    V sub(const V& a, const V& b) const { return W.sub(a, b); }
    V mul(const V& a, const V& b) const { return W.mul(a, b); }
    V small(uint8_t k) const { return W.from_int(k, prec); }
    bool is_zero(const V& a) const { return W.is_zero(a); }
};

// vals has kNumVars entries: Y values then X values
template <class Ops, class V = typename Ops::V>
V form_eval(const Ops& R, const BiForm& f, const std::vector<V>& vals) {
    V acc = R.zero();
    for (size_t i = 0; i < f.v.size(); ++i) {
        V t = R.small(f.c[i]);
        if (f.v[i][0] >= 0) t = R.mul(t, vals[static_cast<size_t>(f.v[i][0])]);
        if (f.v[i][1] >= 0) t = R.mul(t, vals[static_cast<size_t>(f.v[i][1])]);
        acc = R.add(acc, t);
    }
    return acc;
}

template <class Ops, class V = typename Ops::V>
V form_deriv(const Ops& R, const BiForm& f, int var, const std::vector<V>& vals) {
    V acc = R.zero();
    for (size_t i = 0; i < f.v.size(); ++i) {
        for (int s = 0; s < 2; ++s) {
            if (f.v[i][s] != var) continue;
            V t = R.small(f.c[i]);
            int o = f.v[i][1 - s];
            if (o >= 0) t = R.mul(t, vals[static_cast<size_t>(o)]);
            acc = R.add(acc, t);
        }
    }
    return acc;
}

template <class Ops, class V = typename Ops::V>
V relation_eval(const Ops& R, const RelationSet& S, const Relation& r,
                const std::vector<V>& vals) {
    auto prod = [&](int32_t a, int32_t b) {
        V p = form_eval(R, S.forms[static_cast<size_t>(a)], vals);
        if (b >= 0) p = R.mul(p, form_eval(R, S.forms[static_cast<size_t>(b)], vals));
        return p;
    };
    return R.sub(prod(r.f1a, r.f1b), prod(r.f2a, r.f2b));
}

template <class Ops, class V = typename Ops::V>
V relation_deriv(const Ops& R, const RelationSet& S, const Relation& r, int var,
                 const std::vector<V>& vals) {
    auto dprod = [&](int32_t a, int32_t b) {
        const BiForm& fa = S.forms[static_cast<size_t>(a)];
        V da = form_deriv(R, fa, var, vals);
        if (b < 0) return da;
        const BiForm& fb = S.forms[static_cast<size_t>(b)];
        V va = form_eval(R, fa, vals);
        V vb = form_eval(R, fb, vals);
        return R.add(R.mul(da, vb), R.mul(va, form_deriv(R, fb, var, vals)));
    };
    return R.sub(dprod(r.f1a, r.f1b), dprod(r.f2a, r.f2b));
}

template <class Ops, class V = typename Ops::V>
V special_eval(const Ops& R, const std::vector<V>& yvals) {
    V acc = R.zero();
    for (const auto& t : special_relation()) {
        V m = R.small(t.c);
        for (int8_t id : t.v)
            if (id >= 0) m = R.mul(m, yvals[static_cast<size_t>(id)]);
        acc = R.add(acc, m);
    }
    return acc;
}

}  // namespace g2c
