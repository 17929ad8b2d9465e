#include "g2c/polysys.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "g2c/errors.hpp"
#include "g2c/poly.hpp"

namespace g2c {

namespace {

int mono_deg(const Mono& a) { return std::accumulate(a.begin(), a.end(), 0); }

}  // namespace

bool mono_less(MonoOrder ord, const Mono& a, const Mono& b) {
    if (ord == MonoOrder::lex) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
    int da = mono_deg(a), db = mono_deg(b);
    if (da != db) return da < db;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<uint16_t>(a[i] + b[i]);
    return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_div(const Mono& b, const Mono& a) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<uint16_t>(b[i] - a[i]);
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

MPoly mp_make(const Field& F, int nv, std::vector<std::pair<Mono, FElem>> terms,
              MonoOrder ord) {
    std::sort(terms.begin(), terms.end(),
              [&](const auto& x, const auto& y) { return mono_less(ord, y.first, x.first); });
    MPoly r;
    r.nv = nv;
    for (auto& tm : terms) {
        if (!r.t.empty() && r.t.back().first == tm.first)
            r.t.back().second = F.add(r.t.back().second, tm.second);
        else
            r.t.push_back(std::move(tm));
    }
    r.t.erase(std::remove_if(r.t.begin(), r.t.end(),
                             [&](const auto& tm) { return F.is_zero(tm.second); }),
              r.t.end());
    return r;
}

MPoly mp_zero(int nv) {
    MPoly r;
    r.nv = nv;
    return r;
}

MPoly mp_const(const Field& F, int nv, const FElem& c) {
    MPoly r = mp_zero(nv);
    if (!F.is_zero(c)) r.t.push_back({Mono(nv, 0), c});
    return r;
}

MPoly mp_var(const Field& F, int nv, int i) {
    MPoly r = mp_zero(nv);
    Mono m(nv, 0);
    m[i] = 1;
    r.t.push_back({m, F.one()});
    return r;
}

MPoly mp_add(const Field& F, const MPoly& a, const MPoly& b, MonoOrder ord) {
    std::vector<std::pair<Mono, FElem>> terms = a.t;
    terms.insert(terms.end(), b.t.begin(), b.t.end());
    return mp_make(F, a.nv, std::move(terms), ord);
}

MPoly mp_sub(const Field& F, const MPoly& a, const MPoly& b, MonoOrder ord) {
    std::vector<std::pair<Mono, FElem>> terms = a.t;
    for (const auto& tm : b.t) terms.push_back({tm.first, F.neg(tm.second)});
    return mp_make(F, a.nv, std::move(terms), ord);
}

MPoly mp_mul(const Field& F, const MPoly& a, const MPoly& b, MonoOrder ord) {
    std::vector<std::pair<Mono, FElem>> terms;
    terms.reserve(a.t.size() * b.t.size());
    for (const auto& x : a.t)
        for (const auto& y : b.t)
            terms.push_back({mono_mul(x.first, y.first), F.mul(x.second, y.second)});
    return mp_make(F, a.nv, std::move(terms), ord);
}

MPoly mp_scale(const Field& F, const MPoly& a, const FElem& c) {
    if (F.is_zero(c)) return mp_zero(a.nv);
    MPoly r = a;
    for (auto& tm : r.t) tm.second = F.mul(tm.second, c);
    return r;
}

MPoly mp_monic(const Field& F, const MPoly& a) {
    if (a.is_zero()) return a;
    return mp_scale(F, a, F.inv(a.t.front().second));
}

FElem mp_eval(const Field& F, const MPoly& a, const std::vector<FElem>& x) {
    FElem r = F.zero();
    for (const auto& tm : a.t) {
        FElem v = tm.second;
        for (int i = 0; i < a.nv; ++i)
            for (int e = 0; e < tm.first[i]; ++e) v = F.mul(v, x[i]);
        r = F.add(r, v);
    }
    return r;
}

MPoly mp_substitute_tail(const Field& F, const MPoly& a, int first_fixed,
                         const std::vector<FElem>& tail, MonoOrder ord) {
    std::vector<std::pair<Mono, FElem>> terms;
    for (const auto& tm : a.t) {
        FElem v = tm.second;
        Mono m = tm.first;
        for (int i = first_fixed; i < a.nv; ++i) {
            for (int e = 0; e < m[i]; ++e) v = F.mul(v, tail[i]);
            m[i] = 0;
        }
        terms.push_back({std::move(m), std::move(v)});
    }
    return mp_make(F, a.nv, std::move(terms), ord);
}

MPoly mp_map(const Embedding& emb, const MPoly& a) {
    MPoly r = a;
    for (auto& tm : r.t) tm.second = emb.up(tm.second);
    return r;
}

MPoly mp_reduce(const Field& F, const MPoly& f, const std::vector<MPoly>& basis,
                MonoOrder ord) {
    MPoly work = f;
    std::vector<std::pair<Mono, FElem>> rem;
    while (!work.is_zero()) {
        const Mono& lm = work.t.front().first;
        const MPoly* red = nullptr;
        for (const auto& g : basis)
            if (!g.is_zero() && mono_divides(g.t.front().first, lm)) {
                red = &g;
                break;
            }
        if (!red) {
            rem.push_back(work.t.front());
            work.t.erase(work.t.begin());
            continue;
        }
        FElem c = F.mul(work.t.front().second, F.inv(red->t.front().second));
        Mono q = mono_div(lm, red->t.front().first);
        std::vector<std::pair<Mono, FElem>> sub;
        for (const auto& tm : red->t)
            sub.push_back({mono_mul(tm.first, q), F.mul(tm.second, c)});
        work = mp_sub(F, work, mp_make(F, f.nv, std::move(sub), ord), ord);
    }
    MPoly r;
    r.nv = f.nv;
    r.t = std::move(rem);  // already descending: terms were peeled in order
    return r;
}

namespace {

MPoly spoly(const Field& F, const MPoly& f, const MPoly& g, MonoOrder ord) {
    Mono l = mono_lcm(f.t.front().first, g.t.front().first);
    MPoly a = mp_mul(F, f, mp_const(F, f.nv, F.inv(f.t.front().second)), ord);
    MPoly b = mp_mul(F, g, mp_const(F, g.nv, F.inv(g.t.front().second)), ord);
    std::vector<std::pair<Mono, FElem>> ta, tb;
    Mono qa = mono_div(l, f.t.front().first), qb = mono_div(l, g.t.front().first);
    for (const auto& tm : a.t) ta.push_back({mono_mul(tm.first, qa), tm.second});
    for (const auto& tm : b.t) tb.push_back({mono_mul(tm.first, qb), tm.second});
    return mp_sub(F, mp_make(F, f.nv, std::move(ta), ord),
                  mp_make(F, f.nv, std::move(tb), ord), ord);
}

}  // namespace

std::vector<MPoly> buchberger(const FieldPtr& F, std::vector<MPoly> gens, MonoOrder ord,
                              long pair_budget) {
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const MPoly& p) { return p.is_zero(); }),
               gens.end());
    if (gens.empty()) throw input_error("empty generator list");
    const int nv = gens[0].nv;
    std::vector<MPoly> B;
    for (auto& g : gens) {
        // inputs may have been built under a different order
        B.push_back(mp_monic(*F, mp_make(*F, nv, g.t, ord)));
        if (mono_deg(B.back().t.front().first) == 0) return {mp_const(*F, nv, F->one())};
    }

    struct Pair {
        int i, j, deg;
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](int j) {
        for (int i = 0; i < j; ++i) {
            Mono l = mono_lcm(B[i].t.front().first, B[j].t.front().first);
            if (l == mono_mul(B[i].t.front().first, B[j].t.front().first))
                continue;  // coprime leading monomials
            pairs.push_back({i, j, mono_deg(l)});
        }
    };
    for (int j = 1; j < static_cast<int>(B.size()); ++j) push_pairs(j);

    long used = 0;
    while (!pairs.empty()) {
        if (++used > pair_budget) throw math_refusal("Groebner pair budget exceeded");
        // normal strategy: lowest lcm degree, ties by generator indices
        auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return std::tie(a.deg, a.i, a.j) < std::tie(b.deg, b.i, b.j);
        });
        Pair pr = *best;
        pairs.erase(best);
        MPoly s = mp_reduce(*F, spoly(*F, B[pr.i], B[pr.j], ord), B, ord);
        if (s.is_zero()) continue;
        B.push_back(mp_monic(*F, s));
        if (mono_deg(B.back().t.front().first) == 0)
            return {mp_const(*F, nv, F->one())};
        push_pairs(static_cast<int>(B.size()) - 1);
    }

    // auto-reduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < B.size(); ++i) {
            MPoly self = B[i];
            std::vector<MPoly> others;
            for (size_t j = 0; j < B.size(); ++j)
                if (j != i) others.push_back(B[j]);
            MPoly red = mp_reduce(*F, self, others, ord);
            if (red.is_zero()) {
                B.erase(B.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            red = mp_monic(*F, red);
            if (!(red.t == self.t)) {
                B[i] = red;
                changed = true;
            }
        }
    }
    std::sort(B.begin(), B.end(), [&](const MPoly& a, const MPoly& b) {
        return mono_less(ord, b.t.front().first, a.t.front().first);
    });
    return B;
}

bool gb_is_zero_dimensional(const std::vector<MPoly>& gb) {
    if (gb.empty()) return false;
    const int nv = gb[0].nv;
    if (gb.size() == 1 && mono_deg(gb[0].t.front().first) == 0) return true;
    for (int v = 0; v < nv; ++v) {
        bool found = false;
        for (const auto& g : gb) {
            const Mono& lm = g.t.front().first;
            if (lm[v] == 0) continue;
            bool pure = true;
            for (int u = 0; u < nv; ++u)
                if (u != v && lm[u] != 0) pure = false;
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::vector<MPoly> fglm_to_lex(const FieldPtr& Fp, const std::vector<MPoly>& gb) {
    const Field& F = *Fp;
    if (gb.empty()) throw input_error("empty basis");
    const int nv = gb[0].nv;
    if (gb.size() == 1 && mono_deg(gb[0].t.front().first) == 0)
        return {mp_const(F, nv, F.one())};
    if (!gb_is_zero_dimensional(gb))
        throw math_refusal("order conversion needs a zero dimensional ideal");

    std::vector<Mono> lms;
    for (const auto& g : gb) lms.push_back(g.t.front().first);
    auto under = [&](const Mono& m) {
        for (const auto& l : lms)
            if (mono_divides(l, m)) return false;
        return true;
    };
    // staircase monomials spanning the quotient; downward closed, so walking
    // up from 1 reaches all of it
    std::map<Mono, int> idx;
    std::vector<Mono> bas;
    std::vector<Mono> stack{Mono(static_cast<size_t>(nv), 0)};
    while (!stack.empty()) {
        Mono m = stack.back();
        stack.pop_back();
        if (idx.count(m) || !under(m)) continue;
        idx[m] = static_cast<int>(bas.size());
        bas.push_back(m);
        for (int i = 0; i < nv; ++i) {
            Mono u = m;
            ++u[static_cast<size_t>(i)];
            stack.push_back(std::move(u));
        }
    }
    const size_t D = bas.size();

    auto nf_vec = [&](const Mono& m) {
        std::vector<FElem> v(D, F.zero());
        MPoly p = mp_zero(nv);
        p.t.push_back({m, F.one()});
        MPoly r = mp_reduce(F, p, gb, MonoOrder::degrevlex);
        for (const auto& tm : r.t) v[static_cast<size_t>(idx.at(tm.first))] = tm.second;
        return v;
    };
    // multiplication-by-variable matrices, column j = NF(bas[j] * x_i)
    std::vector<std::vector<std::vector<FElem>>> T(static_cast<size_t>(nv));
    for (int i = 0; i < nv; ++i) {
        T[static_cast<size_t>(i)].resize(D);
        for (size_t j = 0; j < D; ++j) {
            Mono m = bas[j];
            ++m[static_cast<size_t>(i)];
            auto it = idx.find(m);
            if (it != idx.end()) {
                std::vector<FElem> v(D, F.zero());
                v[static_cast<size_t>(it->second)] = F.one();
                T[static_cast<size_t>(i)][j] = std::move(v);
            } else {
                T[static_cast<size_t>(i)][j] = nf_vec(m);
            }
        }
    }
    auto apply = [&](int i, const std::vector<FElem>& v) {
        std::vector<FElem> r(D, F.zero());
        for (size_t j = 0; j < D; ++j) {
            if (F.is_zero(v[j])) continue;
            const auto& col = T[static_cast<size_t>(i)][j];
            for (size_t k = 0; k < D; ++k)
                if (!F.is_zero(col[k])) r[k] = F.add(r[k], F.mul(col[k], v[j]));
        }
        return r;
    };

    // walk monomials in increasing lex order; keep the ones whose normal form
    // is independent, a dependence yields a lex basis element
    struct LexLess {
        bool operator()(const Mono& a, const Mono& b) const {
            return mono_less(MonoOrder::lex, a, b);
        }
    };
    std::map<Mono, std::pair<int, int>, LexLess> cand;  // -> (parent kept id, var)
    cand[Mono(static_cast<size_t>(nv), 0)] = {-1, -1};
    std::vector<Mono> kept;
    std::vector<std::vector<FElem>> kv;     // kept normal-form vectors
    std::vector<std::vector<FElem>> rows;   // their reduced row echelon images
    std::vector<int> pivots;
    std::vector<std::vector<FElem>> comb;   // rows[r] = sum comb[r][k] * kv[k]
    std::vector<MPoly> out;
    std::vector<Mono> outlms;

    while (!cand.empty()) {
        auto it = cand.begin();
        Mono m = it->first;
        auto [pi, vi] = it->second;
        cand.erase(it);
        bool blocked = false;
        for (const auto& l : outlms)
            if (mono_divides(l, m)) {
                blocked = true;
                break;
            }
        if (blocked) continue;
        std::vector<FElem> v;
        if (pi < 0) {
            v.assign(D, F.zero());
            v[0] = F.one();  // staircase walk starts at the monomial 1
        } else {
            v = apply(vi, kv[static_cast<size_t>(pi)]);
        }
        std::vector<FElem> w = v;
        std::vector<FElem> expr(kept.size(), F.zero());
        for (size_t r = 0; r < rows.size(); ++r) {
            const FElem c = w[static_cast<size_t>(pivots[r])];
            if (F.is_zero(c)) continue;
            for (size_t k = 0; k < D; ++k)
                w[k] = F.sub(w[k], F.mul(c, rows[r][k]));
            for (size_t k = 0; k < comb[r].size(); ++k)
                expr[k] = F.add(expr[k], F.mul(c, comb[r][k]));
        }
        int p = -1;
        for (size_t k = 0; k < D; ++k)
            if (!F.is_zero(w[k])) {
                p = static_cast<int>(k);
                break;
            }
        if (p < 0) {
            std::vector<std::pair<Mono, FElem>> terms{{m, F.one()}};
            for (size_t k = 0; k < kept.size(); ++k)
                terms.push_back({kept[k], F.neg(expr[k])});
            out.push_back(mp_make(F, nv, std::move(terms), MonoOrder::lex));
            outlms.push_back(m);
            continue;
        }
        FElem alpha = F.inv(w[static_cast<size_t>(p)]);
        for (auto& x : w) x = F.mul(x, alpha);
        std::vector<FElem> cnew(kept.size() + 1, F.zero());
        for (size_t k = 0; k < kept.size(); ++k) cnew[k] = F.neg(F.mul(alpha, expr[k]));
        cnew[kept.size()] = alpha;
        int me = static_cast<int>(kept.size());
        kept.push_back(m);
        kv.push_back(std::move(v));
        rows.push_back(std::move(w));
        pivots.push_back(p);
        comb.push_back(std::move(cnew));
        for (int i = 0; i < nv; ++i) {
            Mono u = m;
            ++u[static_cast<size_t>(i)];
            cand.emplace(std::move(u), std::make_pair(me, i));
        }
    }

    std::sort(out.begin(), out.end(), [&](const MPoly& a, const MPoly& b) {
        return mono_less(MonoOrder::lex, b.t.front().first, a.t.front().first);
    });
    return out;
}

std::vector<MPoly> lex_groebner(const FieldPtr& F, const std::vector<MPoly>& gens,
                                long pair_budget) {
    auto drl = buchberger(F, gens, MonoOrder::degrevlex, pair_budget);
    if (drl.size() == 1 && mono_deg(drl[0].t.front().first) == 0) return drl;
    if (!gb_is_zero_dimensional(drl)) return buchberger(F, gens, MonoOrder::lex, pair_budget);
    return fglm_to_lex(F, drl);
}

namespace {

// Extracts a polynomial supported on variable v alone, or nullopt.
bool univariate_in(const MPoly& p, int v, FPoly* out) {
    int deg = 0;
    for (const auto& tm : p.t) {
        for (int u = 0; u < p.nv; ++u)
            if (u != v && tm.first[u] != 0) return false;
        deg = std::max(deg, static_cast<int>(tm.first[v]));
    }
    if (p.is_zero()) return false;
    FPoly g(static_cast<size_t>(deg) + 1, FElem{});
    for (auto& c : g) c.assign(p.t.front().second.size(), 0);
    for (const auto& tm : p.t) g[tm.first[v]] = tm.second;
    *out = g;
    return true;
}

void solve_rec(const FieldPtr& K, const std::vector<MPoly>& polys, int var,
               std::vector<FElem>& coords, std::mt19937_64& rng,
               std::vector<std::vector<FElem>>* out) {
    if (var < 0) {
        for (const auto& p : polys)
            if (!K->is_zero(mp_eval(*K, p, coords))) return;
        out->push_back(coords);
        return;
    }
    FPoly acc;
    bool have = false;
    for (const auto& p : polys) {
        MPoly q = mp_substitute_tail(*K, p, var + 1, coords, MonoOrder::lex);
        FPoly u;
        if (!univariate_in(q, var, &u)) continue;
        acc = have ? fpoly_gcd(*K, acc, u) : fpoly_monic(*K, u);
        have = true;
    }
    if (!have) throw internal_error("back-substitution found no constraint (basis not lex-triangular)");
    if (fpoly_deg(acc) < 1) return;  // inconsistent branch
    // roots come with multiplicity (the ideal need not be radical); each
    // geometric point is wanted once
    std::vector<FElem> roots = fpoly_roots(K, acc, rng);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (const auto& r : roots) {
        coords[var] = r;
        solve_rec(K, polys, var - 1, coords, rng, out);
    }
    coords[var].assign(K->degree(), 0);
}

}  // namespace

VarietySolution variety_zero_dim(const FieldPtr& base, const std::vector<MPoly>& gb,
                                 std::vector<int> search_degrees, std::mt19937_64& rng) {
    if (!gb_is_zero_dimensional(gb))
        throw math_refusal("polynomial system is not zero dimensional");
    std::sort(search_degrees.begin(), search_degrees.end());
    search_degrees.erase(std::unique(search_degrees.begin(), search_degrees.end()),
                         search_degrees.end());
    search_degrees.erase(std::remove_if(search_degrees.begin(), search_degrees.end(),
                                        [](int d) { return d < 1 || 48 % d != 0; }),
                         search_degrees.end());
    if (search_degrees.empty()) throw input_error("no usable search degrees");

    VarietySolution sol;
    const int nv = gb[0].nv;
    bool trivial = gb.size() == 1 && mono_deg(gb[0].t.front().first) == 0;
    for (int d : search_degrees) {
        ExtField E = extend_field(base, d);
        sol.where = E;
        if (trivial) break;
        std::vector<MPoly> up;
        for (const auto& g : gb) up.push_back(mp_map(*E.emb, g));
        std::vector<FElem> coords(nv, E.field->zero());
        std::vector<std::vector<FElem>> found;
        solve_rec(E.field, up, nv - 1, coords, rng, &found);
        if (found.empty()) continue;
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        const int nb = base->degree();
        for (auto& pt : found) {
            VarietyPoint vp;
            vp.coords = std::move(pt);
            for (int e = 1; e <= d; ++e) {
                if (d % e != 0) continue;
                bool fixed = true;
                for (const auto& c : vp.coords)
                    if (E.field->frobenius(c, static_cast<unsigned>(nb * e)) != c) fixed = false;
                if (fixed) {
                    vp.min_degree = e;
                    break;
                }
            }
            sol.points.push_back(std::move(vp));
        }
        break;
    }
    return sol;
}

}  // namespace g2c
