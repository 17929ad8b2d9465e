#pragma once

#include "g2c/jacobian.hpp"
#include "g2c/relations.hpp"

namespace g2c {

// y^2 = x(x-1)(x-e1)(x-e2)(x-e3) with 0,1,e1,e2,e3 pairwise distinct
struct RosenhainCurve {
    FieldPtr F;
    FElem e1, e2, e3;
};

RosenhainCurve make_rosenhain(const FieldPtr& F, const FElem& e1, const FElem& e2,
                              const FElem& e3);
Curve to_curve(const RosenhainCurve& c);

// 2-theta null point (1 : b01 : b10 : b11), possibly over an extension of the
// curve field (where.emb maps the curve field up). All coordinates nonzero.
struct TwoThetaPoint {
    ExtField where;
    FElem b01, b10, b11;
};

// All fourth-root branch choices, over one common field. The radicands are the
// classical cross-ratios of the branch points (e1,e2,e3,0,1); every branch
// yields a usable 2-theta null point.
std::vector<TwoThetaPoint> thomae(const RosenhainCurve& c, std::mt19937_64& rng);
// the three radicands (b01^4, b10^4, b11^4) in the curve field
std::array<FElem, 3> thomae_radicands(const RosenhainCurve& c);

// 6-theta null point normalized by a_00 = 1, coordinates in U order.
// where.emb maps the curve base field into the field of definition;
// where.rel_degree is the total degree d over it (d | 48 for accepted points).
struct ThetaPoint {
    ExtField where;
    std::array<FElem, 19> a;
};

// coordinate by index code; 00 gives 1, others resolve through the symmetry
const FElem& theta_coord(const ThetaPoint& t, int code);
FElem theta_one(const ThetaPoint& t);

// lex Groebner basis of the four-equation subsystem at the 2-theta values,
// in the variables (Y10, Y13, Y20, Y23) over the 2-theta field
std::vector<MPoly> small_system_gb(const TwoThetaPoint& t2);

// Candidates for the full 6-theta null point over the relative degree-dd
// extension of the 2-theta field: solves the small system there, then fills
// the four coordinate quadruples with all combinations of solutions, pruning
// by the Riemann relations and, with Y = a^9, the correspondence relations
// stage by stage. Survivors satisfy every relation of both families. base is
// the curve field (for the composed embedding). The search stops once `limit`
// candidates have been collected.
std::vector<ThetaPoint> extend_to_six(const FieldPtr& base, const TwoThetaPoint& t2,
                                      const std::vector<MPoly>& gb, int dd,
                                      std::mt19937_64& rng, long limit = 1000000,
                                      bool nonzero_only = false);

// the 38-entry evaluation vector (Y = a^9 then X = a) used by the
// correspondence machinery
std::vector<FElem> theta_xy_values(const ThetaPoint& t);

bool theta_is_valid(const ThetaPoint& t);  // special theta relation vanishes

struct SmoothnessResult {
    bool smooth = false;
    // on success: 16 Riemann then 3 correspondence relations whose Jacobian
    // with respect to the Y variables is invertible at (a) x (a^9)
    std::vector<Relation> selected;
};

SmoothnessResult theta_is_smooth(const ThetaPoint& t);

// Degree-5 input brought to Rosenhain form over the splitting field of f.
// x = shift + scale*X, y = yscale*Y with yscale^2 = scale^5, so the model
// y^2 = X(X-1)(X-e1)(X-e2)(X-e3) is isomorphic over `where`.
struct RosenhainModel {
    RosenhainCurve curve;
    ExtField where;  // curve field over the input field
    FElem shift, scale, yscale;
};

RosenhainModel quintic_to_rosenhain(const Curve& c, std::mt19937_64& rng);

}  // namespace g2c
