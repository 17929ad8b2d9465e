#include "g2c/relations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

int label(const char* s) { return tidx(s[0] - '0', s[1] - '0'); }

const std::array<int, 4> kZ2 = {tidx(0, 0), tidx(0, 3), tidx(3, 0), tidx(3, 3)};

}  // namespace

const std::array<int, 19>& index_set_U() {
    static const std::array<int, 19> U = {
        label("01"), label("02"), label("03"), label("10"), label("11"), label("12"),
        label("13"), label("14"), label("15"), label("20"), label("21"), label("22"),
        label("23"), label("24"), label("25"), label("30"), label("31"), label("32"),
        label("33")};
    return U;
}

int theta_var(int code) {
    static const std::array<int, 36> table = [] {
        std::array<int, 36> t;
        t.fill(-1);
        const auto& U = index_set_U();
        for (int i = 0; i < 19; ++i) t[static_cast<size_t>(U[static_cast<size_t>(i)])] = i;
        for (int c = 1; c < 36; ++c)
            if (t[static_cast<size_t>(c)] < 0) t[static_cast<size_t>(c)] = t[static_cast<size_t>(tidx_neg(c))];
        return t;
    }();
    return table[static_cast<size_t>(code)];
}

namespace {

int yvar(int code) { return theta_var(code); }
int xvar(int code) {
    int t = theta_var(code);
    return t < 0 ? -1 : kXBase + t;
}

class FormRegistry {
  public:
    // terms: (vid1, vid2, integer coefficient); canonicalized mod 3
    int intern(std::vector<std::array<int16_t, 2>> vars, std::vector<int> coefs) {
        for (auto& t : vars)
            if (t[0] > t[1]) std::swap(t[0], t[1]);
        std::vector<size_t> order(vars.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return vars[a] < vars[b]; });
        BiForm f;
        for (size_t k : order) {
            if (!f.v.empty() && f.v.back() == vars[k]) {
                f.c.back() = static_cast<uint8_t>((f.c.back() + coefs[k]) % 3);
            } else {
                f.v.push_back(vars[k]);
                f.c.push_back(static_cast<uint8_t>(coefs[k] % 3));
            }
        }
        for (size_t i = f.v.size(); i-- > 0;)
            if (f.c[i] == 0) {
                f.v.erase(f.v.begin() + static_cast<long>(i));
                f.c.erase(f.c.begin() + static_cast<long>(i));
            }
        std::vector<int16_t> key;
        for (size_t i = 0; i < f.v.size(); ++i) {
            key.push_back(f.v[i][0]);
            key.push_back(f.v[i][1]);
            key.push_back(f.c[i]);
        }
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(forms.size());
        forms.push_back(std::move(f));
        ids_.emplace(std::move(key), id);
        return id;
    }

    std::vector<BiForm> forms;

  private:
    std::map<std::vector<int16_t>, int> ids_;
};

RelationSet build_relations() {
    RelationSet S;
    FormRegistry reg;

    // quadratic theta forms Q(u,w) = sum_{t in Z2} Y_{u+t} Y_{w+t}
    std::array<std::array<int, 36>, 36> qid;
    for (int u = 0; u < 36; ++u)
        for (int w = 0; w < 36; ++w) {
            std::vector<std::array<int16_t, 2>> vars;
            std::vector<int> coefs;
            for (int t : kZ2) {
                vars.push_back({static_cast<int16_t>(yvar(tidx_add(u, t))),
                                static_cast<int16_t>(yvar(tidx_add(w, t)))});
                coefs.push_back(1);
            }
            qid[static_cast<size_t>(u)][static_cast<size_t>(w)] = reg.intern(std::move(vars), std::move(coefs));
        }

    // group quadruples by the permutation-equivalence fingerprint
    std::unordered_map<uint32_t, std::vector<uint32_t>> classes;
    classes.reserve(1 << 16);
    for (int v = 0; v < 36; ++v)
        for (int w = 0; w < 36; ++w) {
            int q1 = qid[static_cast<size_t>(v)][static_cast<size_t>(w)];
            std::array<uint8_t, 2> sd1 = {static_cast<uint8_t>(tidx_add(v, w)),
                                          static_cast<uint8_t>(tidx_sub(v, w))};
            for (int x = 0; x < 36; ++x)
                for (int y = 0; y < 36; ++y) {
                    std::array<uint8_t, 4> k = {sd1[0], sd1[1],
                                                static_cast<uint8_t>(tidx_add(x, y)),
                                                static_cast<uint8_t>(tidx_sub(x, y))};
                    std::sort(k.begin(), k.end());
                    uint32_t key = static_cast<uint32_t>(k[0]) << 24 | static_cast<uint32_t>(k[1]) << 16 |
                                   static_cast<uint32_t>(k[2]) << 8 | k[3];
                    int q2 = qid[static_cast<size_t>(x)][static_cast<size_t>(y)];
                    int a = std::min(q1, q2), b = std::max(q1, q2);
                    classes[key].push_back(static_cast<uint32_t>(a) << 16 | static_cast<uint32_t>(b));
                }
        }
    S.quadruple_class_count = static_cast<long>(classes.size());

    std::vector<uint32_t> keys;
    keys.reserve(classes.size());
    for (const auto& kv : classes) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (uint32_t key : keys) {
        auto& pids = classes[key];
        std::sort(pids.begin(), pids.end());
        pids.erase(std::unique(pids.begin(), pids.end()), pids.end());
        for (size_t i = 1; i < pids.size(); ++i) {
            auto rk = std::make_pair(pids[0], pids[i]);
            if (!seen.insert(rk).second) continue;
            S.riemann.push_back({RelFamily::riemann, static_cast<int32_t>(pids[0] >> 16),
                                 static_cast<int32_t>(pids[0] & 0xffff),
                                 static_cast<int32_t>(pids[i] >> 16),
                                 static_cast<int32_t>(pids[i] & 0xffff)});
        }
    }

    // first correspondence family: sum_{3t=u} X_w Y_t = sum_{3s=w} X_u Y_s
    auto corr_a_side = [&](int u, int w) {
        std::vector<std::array<int16_t, 2>> vars;
        std::vector<int> coefs;
        for (int t = 0; t < 36; ++t)
            if (tidx_mul(3, t) == u) {
                vars.push_back({static_cast<int16_t>(xvar(w)), static_cast<int16_t>(yvar(t))});
                coefs.push_back(1);
            }
        return reg.intern(std::move(vars), std::move(coefs));
    };
    for (size_t i = 0; i < kZ2.size(); ++i)
        for (size_t j = i + 1; j < kZ2.size(); ++j) {
            int lhs = corr_a_side(kZ2[i], kZ2[j]);
            int rhs = corr_a_side(kZ2[j], kZ2[i]);
            if (lhs == rhs) continue;
            S.corr.push_back({RelFamily::corr_a, lhs, -1, rhs, -1});
        }
    S.corr_a_count = S.corr.size();

    // second family: tuples (x,y,v,w) with y in Z2 and x+y = v+3w in Z3,
    // grouped by the common value c = x+y
    auto a_form = [&](int x, int y) {
        std::vector<std::array<int16_t, 2>> vars;
        std::vector<int> coefs;
        for (int z : kZ2) {
            vars.push_back({static_cast<int16_t>(xvar(tidx_add(x, z))),
                            static_cast<int16_t>(xvar(tidx_add(y, z)))});
            coefs.push_back(1);
        }
        return reg.intern(std::move(vars), std::move(coefs));
    };
    auto b_form = [&](int v, int w) {
        std::vector<std::array<int16_t, 2>> vars;
        std::vector<int> coefs;
        for (int u = 0; u < 36; ++u) {
            vars.push_back({static_cast<int16_t>(xvar(tidx_add(v, tidx_mul(3, u)))),
                            static_cast<int16_t>(yvar(tidx_add(w, u)))});
            coefs.push_back(1);
        }
        return reg.intern(std::move(vars), std::move(coefs));
    };
    // Any two tuples of S pair up in a relation. A(x,y) depends only on
    // c = x+y and B(v,w) only on v+3w (their index sums are 2-torsion
    // shifts), so same-c pairs are identically zero and the product list
    // collapses to one entry per c in Z_3.
    std::set<std::pair<uint64_t, uint64_t>> seen_b;
    std::vector<uint64_t> prods;
    for (int c = 0; c < 36; ++c) {
        if (!tidx_in_z3(c)) continue;
        for (int y : kZ2) {
            int x = tidx_sub(c, y);
            int aid = a_form(x, y);
            for (int w = 0; w < 36; ++w) {
                int v = tidx_sub(c, tidx_mul(3, w));
                prods.push_back(static_cast<uint64_t>(aid) << 32 |
                                static_cast<uint64_t>(b_form(v, w)));
            }
        }
    }
    std::sort(prods.begin(), prods.end());
    prods.erase(std::unique(prods.begin(), prods.end()), prods.end());
    for (size_t i = 0; i < prods.size(); ++i)
        for (size_t j = i + 1; j < prods.size(); ++j) {
            uint64_t ai = prods[i] >> 32, bi = prods[i] & 0xffffffff;
            uint64_t aj = prods[j] >> 32, bj = prods[j] & 0xffffffff;
            // the relation is the unordered pair of cross products
            uint64_t c1 = ai << 32 | bj, c2 = aj << 32 | bi;
            if (c1 == c2) continue;
            if (!seen_b.insert(std::minmax(c1, c2)).second) continue;
            S.corr.push_back({RelFamily::corr_b, static_cast<int32_t>(ai),
                              static_cast<int32_t>(bj), static_cast<int32_t>(aj),
                              static_cast<int32_t>(bi)});
        }

    S.forms = std::move(reg.forms);
    return S;
}

}  // namespace

const RelationSet& relation_set() {
    static const RelationSet S = build_relations();
    return S;
}

const std::vector<QuarticTerm>& special_relation() {
    static const std::vector<QuarticTerm> terms = [] {
        struct Raw {
            uint8_t c;
            const char* m[4];
        };
        static const Raw raw[] = {
            {2, {"00", "10", "01", "31"}}, {2, {"00", "20", "31", "31"}},
            {2, {"00", "13", "02", "31"}}, {2, {"00", "23", "31", "32"}},
            {2, {"03", "10", "01", "32"}}, {2, {"03", "20", "31", "32"}},
            {2, {"03", "13", "02", "32"}}, {2, {"03", "23", "32", "32"}},
            {2, {"30", "10", "01", "01"}}, {2, {"30", "20", "01", "31"}},
            {2, {"30", "13", "01", "02"}}, {2, {"30", "23", "01", "32"}},
            {2, {"33", "10", "01", "02"}}, {2, {"33", "20", "02", "31"}},
            {2, {"33", "13", "02", "02"}}, {2, {"33", "23", "02", "32"}},
            {1, {"10", "10", "25", "21"}}, {1, {"10", "20", "11", "21"}},
            {1, {"10", "20", "25", "15"}}, {1, {"10", "13", "22", "21"}},
            {1, {"10", "13", "25", "24"}}, {1, {"10", "23", "14", "21"}},
            {1, {"10", "23", "25", "12"}}, {1, {"20", "20", "11", "15"}},
            {1, {"20", "13", "11", "24"}}, {1, {"20", "13", "22", "15"}},
            {1, {"20", "23", "11", "12"}}, {1, {"20", "23", "14", "15"}},
            {1, {"13", "13", "22", "24"}}, {1, {"13", "23", "14", "24"}},
            {1, {"13", "23", "22", "12"}}, {1, {"23", "23", "14", "12"}},
        };
        std::vector<QuarticTerm> out;
        for (const auto& r : raw) {
            QuarticTerm t;
            t.c = r.c;
            for (int i = 0; i < 4; ++i)
                t.v[static_cast<size_t>(i)] = static_cast<int8_t>(theta_var(label(r.m[i])));
            out.push_back(t);
        }
        return out;
    }();
    return terms;
}

std::vector<MPoly> small_system(const FieldPtr& F, const FElem& a00, const FElem& a03,
                                const FElem& a30, const FElem& a33) {
    // linear terms: coefficient, exponents of (a00,a03,a30,a33), target variable;
    // quartic terms: coefficient, exponents of (Y10,Y13,Y20,Y23)
    struct Lin {
        int c;
        int e[4];
        int var;
    };
    struct Qrt {
        int c;
        int e[4];
    };
    // variable order (Y10, Y13, Y20, Y23)
    static const std::vector<Lin> lin1 = {
        {1, {3, 0, 0, 0}, 2}, {1, {2, 1, 0, 0}, 3}, {1, {2, 0, 1, 0}, 0}, {1, {2, 0, 0, 1}, 1},
        {1, {1, 2, 0, 0}, 2}, {1, {1, 0, 2, 0}, 2}, {1, {1, 0, 0, 2}, 2}, {1, {0, 3, 0, 0}, 3},
        {1, {0, 2, 1, 0}, 0}, {1, {0, 2, 0, 1}, 1}, {1, {0, 1, 2, 0}, 3}, {1, {0, 1, 0, 2}, 3},
        {1, {0, 0, 3, 0}, 0}, {1, {0, 0, 2, 1}, 1}, {1, {0, 0, 1, 2}, 0}, {1, {0, 0, 0, 3}, 1}};
    static const std::vector<Qrt> qrt1 = {
        {2, {4, 0, 0, 0}}, {1, {2, 0, 2, 0}}, {1, {2, 2, 0, 0}}, {1, {2, 0, 0, 2}},
        {2, {0, 0, 4, 0}}, {1, {0, 2, 2, 0}}, {1, {0, 0, 2, 2}}, {2, {0, 4, 0, 0}},
        {1, {0, 2, 0, 2}}, {2, {0, 0, 0, 4}}};
    static const std::vector<Lin> lin2 = {
        {2, {2, 0, 0, 1}, 1}, {2, {1, 1, 1, 0}, 1}, {2, {1, 1, 0, 1}, 0}, {2, {1, 0, 1, 1}, 3},
        {2, {1, 0, 0, 2}, 2}, {2, {0, 2, 1, 0}, 0}, {2, {0, 1, 2, 0}, 3}, {2, {0, 1, 1, 1}, 2}};
    static const std::vector<Qrt> qrt2 = {{2, {2, 0, 0, 2}}, {1, {1, 1, 1, 1}}, {2, {0, 2, 2, 0}}};
    static const std::vector<Lin> lin3 = {
        {2, {2, 0, 1, 0}, 0}, {2, {1, 1, 1, 0}, 1}, {2, {1, 1, 0, 1}, 0}, {2, {1, 0, 2, 0}, 2},
        {2, {1, 0, 1, 1}, 3}, {2, {0, 2, 0, 1}, 1}, {2, {0, 1, 1, 1}, 2}, {2, {0, 1, 0, 2}, 3}};
    static const std::vector<Qrt> qrt3 = {{2, {2, 0, 2, 0}}, {1, {1, 1, 1, 1}}, {2, {0, 2, 0, 2}}};
    static const std::vector<Lin> lin4 = {
        {2, {2, 1, 0, 0}, 3}, {2, {1, 2, 0, 0}, 2}, {2, {1, 1, 1, 0}, 1}, {2, {1, 1, 0, 1}, 0},
        {2, {1, 0, 1, 1}, 3}, {2, {0, 1, 1, 1}, 2}, {2, {0, 0, 2, 1}, 1}, {2, {0, 0, 1, 2}, 0}};
    static const std::vector<Qrt> qrt4 = {{2, {2, 2, 0, 0}}, {1, {1, 1, 1, 1}}, {2, {0, 0, 2, 2}}};

    const std::array<FElem, 4> a = {a00, a03, a30, a33};
    auto build = [&](const std::vector<Lin>& lin, const std::vector<Qrt>& qrt) {
        std::vector<std::pair<Mono, FElem>> terms;
        for (const auto& L : lin) {
            FElem c = F->from_int(L.c);
            for (int i = 0; i < 4; ++i)
                for (int e = 0; e < L.e[i]; ++e) c = F->mul(c, a[static_cast<size_t>(i)]);
            Mono m(4, 0);
            m[static_cast<size_t>(L.var)] = 1;
            terms.push_back({m, c});
        }
        for (const auto& Q : qrt) {
            Mono m(4, 0);
            for (int i = 0; i < 4; ++i) m[static_cast<size_t>(i)] = static_cast<uint16_t>(Q.e[i]);
            terms.push_back({m, F->from_int(Q.c)});
        }
        return mp_make(*F, 4, std::move(terms), MonoOrder::lex);
    };
    return {build(lin1, qrt1), build(lin2, qrt2), build(lin3, qrt3), build(lin4, qrt4)};
}

}  // namespace g2c
