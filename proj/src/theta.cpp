#include "g2c/theta.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

FElem ratio(const Field& F, std::initializer_list<FElem> num,
            std::initializer_list<FElem> den) {
    FElem a = F.one(), b = F.one();
    for (const auto& x : num) a = F.mul(a, x);
    for (const auto& x : den) b = F.mul(b, x);
    return F.mul(a, F.inv(b));
}

bool is_square(const Field& F, const FElem& a) {
    if (F.is_zero(a)) return true;
    mpz_class e = (F.order() - 1) / 2;
    return F.is_one(F.pow(a, e));
}

// embedding of `base` into the top of a two-step tower, as one ExtField
ExtField compose_ext(const FieldPtr& base, const ExtField& lo, const ExtField& hi) {
    ExtField out;
    out.field = hi.field;
    out.rel_degree = lo.rel_degree * hi.rel_degree;
    out.emb = std::make_shared<Embedding>(base, hi.field,
                                          hi.emb->up(lo.emb->up(base->gen())));
    return out;
}

}  // namespace

RosenhainCurve make_rosenhain(const FieldPtr& F, const FElem& e1, const FElem& e2,
                              const FElem& e3) {
    std::vector<FElem> pts = {F->zero(), F->one(), e1, e2, e3};
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j])
                throw input_error("Rosenhain invariants must be distinct and avoid 0,1");
    return {F, e1, e2, e3};
}

Curve to_curve(const RosenhainCurve& c) {
    return make_curve_rosenhain(c.F, c.e1, c.e2, c.e3);
}

std::array<FElem, 3> thomae_radicands(const RosenhainCurve& c) {
    const Field& F = *c.F;
    FElem one = F.one();
    FElem d1 = F.sub(c.e1, one), d2 = F.sub(c.e2, one), d3 = F.sub(c.e3, one);
    FElem e12 = F.sub(c.e1, c.e2), e13 = F.sub(c.e1, c.e3);
    // branch points (e1,e2,e3,e4,e5) with e4 = 0, e5 = 1
    FElem r01 = ratio(F, {c.e1, d2, c.e3}, {d1, c.e2, d3});
    FElem r10 = ratio(F, {e12, c.e1}, {e13, d1});
    FElem r11 = ratio(F, {e12, d2, c.e3}, {e13, c.e2, d3});
    return {r01, r10, r11};
}

std::vector<TwoThetaPoint> thomae(const RosenhainCurve& c, std::mt19937_64& rng) {
    auto rad = thomae_radicands(c);
    for (int dd : {1, 2, 4}) {
        ExtField E = extend_field(c.F, dd);
        std::array<std::vector<FElem>, 3> roots;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            FPoly p(5, E.field->zero());
            p[0] = E.field->neg(E.emb->up(rad[static_cast<size_t>(i)]));
            p[4] = E.field->one();
            roots[static_cast<size_t>(i)] = fpoly_roots(E.field, p, rng);
            ok = !roots[static_cast<size_t>(i)].empty();
        }
        if (!ok) continue;
        std::vector<TwoThetaPoint> out;
        for (const auto& b01 : roots[0])
            for (const auto& b10 : roots[1])
                for (const auto& b11 : roots[2]) out.push_back({E, b01, b10, b11});
        return out;
    }
    throw internal_error("no fourth roots of the Thomae radicands up to degree 4");
}

const FElem& theta_coord(const ThetaPoint& t, int code) {
    int id = theta_var(code);
    if (id < 0) throw internal_error("theta_coord of the normalized index");
    return t.a[static_cast<size_t>(id)];
}

FElem theta_one(const ThetaPoint& t) { return t.where.field->one(); }

std::vector<MPoly> small_system_gb(const TwoThetaPoint& t2) {
    const FieldPtr& F = t2.where.field;
    auto sys = small_system(F, F->one(), t2.b01, t2.b10, t2.b11);
    return lex_groebner(F, sys);
}

namespace {

// quadruple slots in fill order; the first is the small-system variable set
constexpr int kSlots[4][4] = {
    {tidx(1, 0), tidx(1, 3), tidx(2, 0), tidx(2, 3)},
    {tidx(1, 4), tidx(1, 1), tidx(2, 2), tidx(2, 5)},
    {tidx(3, 2), tidx(3, 1), tidx(0, 2), tidx(0, 1)},
    {tidx(1, 2), tidx(1, 5), tidx(2, 4), tidx(2, 1)},
};

uint64_t form_support(const RelationSet& S, int32_t fi) {
    uint64_t m = 0;
    for (const auto& pr : S.forms[static_cast<size_t>(fi)].v)
        for (int16_t v : pr)
            if (v >= 0) m |= 1ull << v;
    return m;
}

// Riemann and correspondence relations grouped by the first fill stage at
// which all their variables are known (a coordinate makes both its X and Y
// variable known at once). No relation links just two of the quadruple slots,
// so real pruning starts at the third filled slot; the per-stage form cache
// keeps that level cheap.
struct StagedRelations {
    std::array<std::vector<Relation>, 4> rels;       // Riemann, Y variables only
    std::array<std::vector<Relation>, 4> corr_rels;  // both variable blocks
    std::array<int, 82> form_stage;  // first stage the form is evaluable at
};

const StagedRelations& staged_relations() {
    static const StagedRelations staged = [] {
        const RelationSet& S = relation_set();
        uint64_t known = 0;
        auto mark = [&](int code) {
            int id = theta_var(code);
            known |= 1ull << id;
            known |= 1ull << (kXBase + id);
        };
        for (int code : {tidx(0, 3), tidx(3, 0), tidx(3, 3)}) mark(code);
        std::array<uint64_t, 4> cum{};
        for (int k = 0; k < 4; ++k) {
            for (int code : kSlots[k]) mark(code);
            cum[static_cast<size_t>(k)] = known;
        }
        StagedRelations out;
        out.form_stage.fill(3);
        for (size_t f = 0; f < S.forms.size(); ++f) {
            uint64_t m = form_support(S, static_cast<int32_t>(f));
            for (int k = 0; k < 4; ++k)
                if ((m & ~cum[static_cast<size_t>(k)]) == 0) {
                    out.form_stage[f] = k;
                    break;
                }
        }
        auto stage_of = [&](const Relation& r) {
            int k = 0;
            for (int32_t fi : {r.f1a, r.f1b, r.f2a, r.f2b})
                if (fi >= 0) k = std::max(k, out.form_stage[static_cast<size_t>(fi)]);
            return k;
        };
        for (const auto& r : S.riemann) out.rels[static_cast<size_t>(stage_of(r))].push_back(r);
        for (const auto& r : S.corr)
            out.corr_rels[static_cast<size_t>(stage_of(r))].push_back(r);
        return out;
    }();
    return staged;
}

}  // namespace

std::vector<ThetaPoint> extend_to_six(const FieldPtr& base, const TwoThetaPoint& t2,
                                      const std::vector<MPoly>& gb, int dd,
                                      std::mt19937_64& rng, long limit, bool nonzero_only) {
    VarietySolution sol = variety_zero_dim(t2.where.field, gb, {dd}, rng);
    if (nonzero_only) {
        std::erase_if(sol.points, [&](const VarietyPoint& p) {
            for (const auto& c : p.coords)
                if (sol.where.field->is_zero(c)) return true;
            return false;
        });
    }
    if (sol.points.empty()) return {};
    const FieldPtr& Gp = sol.where.field;
    const Field& G = *Gp;
    FieldEval R{G};
    const RelationSet& S = relation_set();
    const auto& staged = staged_relations();

    ExtField tot = compose_ext(base, t2.where, sol.where);

    // vals: candidate coordinates in the Y block (Riemann checks); cvals: the
    // correspondence evaluation vector, Y = a^9 and X = a per known coordinate
    std::vector<FElem> vals(kNumVars, G.zero());
    std::vector<FElem> cvals(kNumVars, G.zero());
    auto put = [&](int id, const FElem& v) {
        vals[static_cast<size_t>(id)] = v;
        cvals[static_cast<size_t>(id)] = G.frobenius(v, 2);
        cvals[static_cast<size_t>(kXBase + id)] = v;
    };
    put(theta_var(tidx(0, 3)), sol.where.emb->up(t2.b01));
    put(theta_var(tidx(3, 0)), sol.where.emb->up(t2.b10));
    put(theta_var(tidx(3, 3)), sol.where.emb->up(t2.b11));

    // per-form value caches; an entry is live when its tag matches the stamp
    // of the stage it was computed at
    const size_t nf = S.forms.size();
    std::vector<FElem> fval(nf, G.zero()), cfval(nf, G.zero());
    std::vector<uint64_t> ftag(nf, 0), cftag(nf, 0);
    std::array<uint64_t, 4> stamp{1, 1, 1, 1};
    uint64_t counter = 1;
    auto form_at = [&](int32_t fi, const std::vector<FElem>& at, std::vector<FElem>& cache,
                       std::vector<uint64_t>& tags) -> const FElem& {
        size_t f = static_cast<size_t>(fi);
        uint64_t want = stamp[static_cast<size_t>(staged.form_stage[f])];
        if (tags[f] != want) {
            cache[f] = form_eval(R, S.forms[f], at);
            tags[f] = want;
        }
        return cache[f];
    };
    auto rel_holds = [&](const Relation& r, const std::vector<FElem>& at,
                         std::vector<FElem>& cache, std::vector<uint64_t>& tags) {
        FElem lhs = form_at(r.f1a, at, cache, tags);
        if (r.f1b >= 0) lhs = G.mul(lhs, form_at(r.f1b, at, cache, tags));
        FElem rhs = form_at(r.f2a, at, cache, tags);
        if (r.f2b >= 0) rhs = G.mul(rhs, form_at(r.f2b, at, cache, tags));
        return lhs == rhs;
    };

    std::set<std::array<FElem, 19>> seen;
    std::vector<ThetaPoint> out;
    auto rec = [&](auto&& self, int k) -> void {
        if (k == 4) {
            std::array<FElem, 19> a;
            for (int i = 0; i < 19; ++i) a[static_cast<size_t>(i)] = vals[static_cast<size_t>(i)];
            if (seen.insert(a).second) out.push_back({tot, a});
            return;
        }
        for (const auto& p : sol.points) {
            if (static_cast<long>(out.size()) >= limit) return;
            for (int j = 0; j < 4; ++j)
                put(theta_var(kSlots[k][j]), p.coords[static_cast<size_t>(j)]);
            // invalidate form values of this stage and deeper
            for (int s = k; s < 4; ++s) stamp[static_cast<size_t>(s)] = ++counter;
            bool ok = true;
            for (const auto& r : staged.rels[static_cast<size_t>(k)])
                if (!rel_holds(r, vals, fval, ftag)) {
                    ok = false;
                    break;
                }
            for (const auto& r : staged.corr_rels[static_cast<size_t>(k)]) {
                if (!ok) break;
                if (!rel_holds(r, cvals, cfval, cftag)) ok = false;
            }
            if (ok) self(self, k + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<FElem> theta_xy_values(const ThetaPoint& t) {
    const Field& F = *t.where.field;
    std::vector<FElem> vals(kNumVars, F.zero());
    for (int i = 0; i < 19; ++i) {
        vals[static_cast<size_t>(i)] = F.frobenius(t.a[static_cast<size_t>(i)], 2);
        vals[static_cast<size_t>(kXBase + i)] = t.a[static_cast<size_t>(i)];
    }
    return vals;
}

bool theta_is_valid(const ThetaPoint& t) {
    FieldEval R{*t.where.field};
    std::vector<FElem> y(t.a.begin(), t.a.end());
    return t.where.field->is_zero(special_eval(R, y));
}

namespace {

// incremental row space over F; add returns true when the row was independent
struct RowSpace {
    const Field& F;
    std::vector<std::vector<FElem>> rows;  // reduced, pivot normalized to 1
    std::vector<int> pivots;

    bool add(std::vector<FElem> r) {
        for (size_t i = 0; i < rows.size(); ++i) {
            FElem c = r[static_cast<size_t>(pivots[i])];  // copy, the loop writes into r
            if (F.is_zero(c)) continue;
            for (size_t j = 0; j < r.size(); ++j)
                r[j] = F.sub(r[j], F.mul(c, rows[i][j]));
        }
        int p = -1;
        for (size_t j = 0; j < r.size(); ++j)
            if (!F.is_zero(r[j])) {
                p = static_cast<int>(j);
                break;
            }
        if (p < 0) return false;
        FElem inv = F.inv(r[static_cast<size_t>(p)]);
        for (auto& x : r) x = F.mul(x, inv);
        rows.push_back(std::move(r));
        pivots.push_back(p);
        return true;
    }
};

}  // namespace

SmoothnessResult theta_is_smooth(const ThetaPoint& t) {
    const Field& F = *t.where.field;
    FieldEval R{F};
    const RelationSet& S = relation_set();
    std::vector<FElem> vals = theta_xy_values(t);
    auto y_row = [&](const Relation& r) {
        std::vector<FElem> row(19);
        for (int v = 0; v < 19; ++v)
            row[static_cast<size_t>(v)] = relation_deriv(R, S, r, v, vals);
        return row;
    };
    SmoothnessResult res;
    RowSpace rs{F, {}, {}};
    for (const auto& r : S.riemann) {
        if (rs.rows.size() == 16) break;
        if (rs.add(y_row(r))) res.selected.push_back(r);
    }
    if (rs.rows.size() < 16) return {};
    for (const auto& r : S.corr) {
        if (rs.rows.size() == 19) break;
        if (rs.add(y_row(r))) res.selected.push_back(r);
    }
    if (rs.rows.size() < 19) return {};
    res.smooth = true;
    return res;
}

RosenhainModel quintic_to_rosenhain(const Curve& c, std::mt19937_64& rng) {
    const FieldPtr& F = c.F;
    // splitting degree: lcm of the distinct-degree factor layers
    int e = 1;
    FPoly g = c.f;
    FPoly x = fpoly_x(*F);
    mpz_class qi = 1;
    for (int i = 1; i <= 5 && fpoly_deg(g) > 0; ++i) {
        qi *= F->order();
        FPoly h = fpoly_gcd(*F, fpoly_sub(*F, fpoly_powmod(*F, x, qi, g), x), g);
        if (fpoly_deg(h) > 0) {
            e = std::lcm(e, i);
            g = fpoly_quot(*F, g, h);
        }
    }
    ExtField E = extend_field(F, e);
    std::vector<FElem> roots = fpoly_roots(E.field, fpoly_map(*E.emb, c.f), rng);
    if (roots.size() != 5) throw internal_error("quintic does not split at the computed degree");

    // pick (r4, r5) with (r5 - r4)^5 a square so the y rescaling stays in the
    // field; prefer (0, 1) so curves already in form keep their model
    auto choose = [&](const FieldPtr& K,
                      const std::vector<FElem>& rs) -> std::pair<int, int> {
        auto find = [&](const FElem& v) {
            for (size_t i = 0; i < rs.size(); ++i)
                if (rs[i] == v) return static_cast<int>(i);
            return -1;
        };
        int z = find(K->zero()), o = find(K->one());
        if (z >= 0 && o >= 0) return {z, o};
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < rs.size(); ++j)
                if (i != j && is_square(*K, K->sub(rs[j], rs[i])))
                    return {static_cast<int>(i), static_cast<int>(j)};
        return {-1, -1};
    };
    auto [i4, i5] = choose(E.field, roots);
    if (i4 < 0) {
        // every element of the current field is a square one level up
        ExtField E2 = extend_field(E.field, 2);
        for (auto& r : roots) r = E2.emb->up(r);
        std::sort(roots.begin(), roots.end());
        E = compose_ext(F, E, E2);
        std::tie(i4, i5) = choose(E.field, roots);
        if (i4 < 0) throw internal_error("no square root-difference after doubling");
    }
    const FieldPtr& K = E.field;
    FElem shift = roots[static_cast<size_t>(i4)];
    FElem scale = K->sub(roots[static_cast<size_t>(i5)], shift);
    FElem lambda = K->mul(K->pow(scale, 4), scale);
    RootSet sq = rth_roots(K, lambda, 2, rng);
    if (sq.where.rel_degree != 1) throw internal_error("scale^5 is not a square");
    FElem inv_scale = K->inv(scale);
    std::vector<FElem> es;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (static_cast<int>(i) == i4 || static_cast<int>(i) == i5) continue;
        es.push_back(K->mul(K->sub(roots[i], shift), inv_scale));
    }
    RosenhainModel m;
    m.curve = make_rosenhain(K, es[0], es[1], es[2]);
    m.where = E;
    m.shift = shift;
    m.scale = scale;
    m.yscale = sq.roots.front();
    return m;
}

}  // namespace g2c
