#include "g2c/pipeline.hpp"

#include <chrono>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

double secs_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// steps (III)+(IV) for one lifted point; math_refusal when every candidate
// charpoly dies, which sends the caller to the next theta candidate
FrobCharPoly recover_chi(const Curve& c, const ThetaPoint& t6, const LiftState& st,
                         int m, std::mt19937_64& rng, const PipelineOptions& opt,
                         double* t_norm) {
    auto t0 = std::chrono::steady_clock::now();
    WittRingPtr W = WittRing::make(t6.where.field, m);
    mpz_class pi = W->norm(verschiebung_delta(*W, st));
    *t_norm += secs_since(t0);
    if (opt.trace) opt.trace("norm: pi = " + pi.get_str() + " mod 3^" + std::to_string(m));

    int nd = t6.where.field->degree();
    mpz_class ql;
    mpz_ui_pow_ui(ql.get_mpz_t(), 3, static_cast<unsigned long>(nd));
    std::vector<FrobCharPoly> pool;
    for (const SymCandidate& sc : enumerate_sym_candidates(pi, ql, m))
        for (const FrobCharPoly& x : sym_to_chi(sc, ql)) pool.push_back(x);
    if (opt.trace) opt.trace("chi: " + std::to_string(pool.size()) + " candidates over the theta field");
    int d = t6.where.rel_degree;
    if (d == 1) return eliminate(pool, c, opt.trials, rng);

    Curve cl{t6.where.field, fpoly_map(*t6.where.emb, c.f)};
    std::vector<FrobCharPoly> alive = eliminate_survivors(pool, cl, opt.trials, rng);
    if (alive.empty())
        throw math_refusal("every charpoly candidate was eliminated over the theta field");
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), 3, static_cast<unsigned long>(c.F->degree()));
    std::vector<FrobCharPoly> base_pool;
    for (const FrobCharPoly& x : alive)
        for (const FrobCharPoly& y : descend_candidates(x, d, q)) base_pool.push_back(y);
    if (opt.trace)
        opt.trace("chi: " + std::to_string(alive.size()) + " survivors, " +
                  std::to_string(base_pool.size()) + " descents");
    return eliminate(base_pool, c, opt.trials, rng);
}

}  // namespace

PipelineResult count_rosenhain(const RosenhainCurve& rc, const PipelineOptions& opt) {
    Curve c = to_curve(rc);
    if (!ordinary_test(c))
        throw math_refusal("curve is not ordinary (Hasse-Witt determinant vanishes)");
    std::mt19937_64 rng(opt.seed);
    PipelineResult res;
    const FieldPtr& F = rc.F;

    auto t0 = std::chrono::steady_clock::now();
    auto theta_time = [&] { return secs_since(t0) - res.t_lift - res.t_norm - res.t_chi; };
    std::string last_refusal = "no smooth liftable theta null point found";
    auto branches = thomae(rc, rng);
    for (size_t bi = 0; bi < branches.size(); ++bi) {
        const TwoThetaPoint& t2 = branches[bi];
        std::vector<MPoly> gb;
        try {
            gb = small_system_gb(t2);
        } catch (const math_refusal&) {
            continue;
        }
        for (int dd = 1; dd <= 4; ++dd) {
            if (48 % (t2.where.rel_degree * dd) != 0) continue;
            std::vector<ThetaPoint> cands = extend_to_six(F, t2, gb, dd, rng, 256, true);
            if (opt.trace)
                opt.trace("theta: branch " + std::to_string(bi) + " dd " + std::to_string(dd) +
                          ": " + std::to_string(cands.size()) + " candidates");
            for (ThetaPoint& t6 : cands) {
                if (!theta_is_valid(t6)) continue;
                SmoothnessResult sm = theta_is_smooth(t6);
                if (!sm.smooth) continue;
                int m = 2 * t6.where.field->degree() + 2;
                LiftState st;
                try {
                    auto cb = [&](const LiftTrace& t) {
                        if (opt.trace)
                            opt.trace("lift: prec " + std::to_string(t.level_prec) +
                                      " residual valuation " + std::to_string(t.residual_valuation) +
                                      " (" + std::to_string(t.seconds) + " s)");
                    };
                    auto lt0 = std::chrono::steady_clock::now();
                    st = canonical_lift(t6, sm.selected, m, cb);
                    res.t_lift += secs_since(lt0);
                } catch (const lift_inconsistent&) {
                    continue;  // spurious candidate
                }
                try {
                    auto ct0 = std::chrono::steady_clock::now();
                    double tn = 0;
                    FrobCharPoly chi = recover_chi(c, t6, st, m, rng, opt, &tn);
                    res.t_chi += secs_since(ct0) - tn;
                    res.t_norm += tn;
                    res.chi = chi;
                    res.ext_degree = t6.where.rel_degree;
                    res.m = m;
                    res.t_theta = theta_time();
                    return res;
                } catch (const math_refusal& e) {
                    // candidate lifted but did not describe the Jacobian's
                    // isogeny class; move on
                    if (opt.trace) opt.trace(std::string("chi: rejected candidate: ") + e.what());
                    last_refusal = e.what();
                    continue;
                }
            }
        }
    }
    throw math_refusal(last_refusal);
}

PipelineResult count_curve(const Curve& c, const PipelineOptions& opt) {
    if (!ordinary_test(c))
        throw math_refusal("curve is not ordinary (Hasse-Witt determinant vanishes)");
    std::mt19937_64 rng(opt.seed);
    RosenhainModel model = quintic_to_rosenhain(c, rng);
    PipelineResult res = count_rosenhain(model.curve, opt);
    int e = model.where.rel_degree;
    if (e > 1) {
        auto t0 = std::chrono::steady_clock::now();
        res.chi = descend_extension(res.chi, e, c, rng);
        res.t_chi += secs_since(t0);
        res.ext_degree *= e;
    }
    return res;
}

}  // namespace g2c
