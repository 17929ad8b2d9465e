#pragma once

#include <functional>

#include "g2c/theta.hpp"

namespace g2c {

using WMatrix = std::vector<std::vector<WElem>>;  // row major, square

// Base solver for eps^{sigma^2} + A*eps + w = 0 over the residue field of a
// Witt ring, A fixed. sigma^2 is F_3-linear, so the equation expands over an
// F_3-basis into one big linear system; the row reduction is done once at
// construction and reused for every right-hand side.
class ArtinSchreierBase {
  public:
    ArtinSchreierBase(const FieldPtr& F, const std::vector<std::vector<FElem>>& A);

    int dim() const { return k_; }
    bool unique() const { return free_cols_.empty(); }

    // solves for eps given w; returns false when the system is inconsistent.
    // With free columns the first basis solution (free coordinates zero) is
    // taken.
    bool solve(const std::vector<FElem>& w, std::vector<FElem>& eps) const;

  private:
    FieldPtr F_;
    int k_ = 0;      // number of vector coordinates
    int n_ = 0;      // F_3-degree of the field
    int dim3_ = 0;   // k * n
    // row echelon data of the linearized map: reduced rows and the transform
    // applied to the identity, both over F_3
    std::vector<std::vector<uint8_t>> rref_, trans_;
    std::vector<int> pivot_col_;
    std::vector<int> free_cols_;
};

// Delta^{sigma^2} + A*Delta + v = 0 mod 3^m by precision doubling; base is
// the mod-3 solver above built from A mod 3. Throws lift_inconsistent when
// some level has no solution.
struct lift_inconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<WElem> solve_as_lifted(const WittRing& W, const ArtinSchreierBase& base,
                                   const WMatrix& A, const std::vector<WElem>& v,
                                   int m);

// The 19 selected relations as a map Phi: (x, y) -> Z_q^19 with x the theta
// coordinates and y their sigma^2 image, plus its two Jacobian blocks.
struct LiftSystem {
    WittRingPtr W;
    std::vector<Relation> selected;  // from the smoothness test, size 19

    std::vector<WElem> phi(const std::vector<WElem>& xy, int prec) const;
    // derivative block with respect to the y (sigma^2) or x variables
    WMatrix d_y(const std::vector<WElem>& xy, int prec) const;
    WMatrix d_x(const std::vector<WElem>& xy, int prec) const;
};

struct LiftState {
    std::vector<WElem> a;  // 19 coordinates, a_00 pinned to 1 implicitly
    int prec = 0;
};

struct LiftTrace {
    int level_prec;
    int residual_valuation;
    double seconds;
};

// Canonical lift of a valid smooth theta null point to precision m. One guard
// digit is carried internally and truncated on output. The residual valuation
// at least doubles per level; a candidate whose Artin-Schreier system turns
// inconsistent raises lift_inconsistent (spurious extension candidate).
LiftState canonical_lift(const ThetaPoint& t6, const std::vector<Relation>& selected,
                         int m, const std::function<void(const LiftTrace&)>& trace = {});

// the 38-entry Witt evaluation vector (y = sigma^2(a) then x = a)
std::vector<WElem> witt_xy_values(const WittRing& W, const std::vector<WElem>& a,
                                  int prec);

// matrix helpers over the Witt ring
WMatrix wmat_mul(const WittRing& W, const WMatrix& A, const WMatrix& B);
std::vector<WElem> wmat_apply(const WittRing& W, const WMatrix& A,
                              const std::vector<WElem>& v);
// inverse of a matrix that is invertible mod 3, by Newton iteration from the
// residue inverse
WMatrix wmat_inv(const WittRing& W, const WMatrix& A, int prec);

}  // namespace g2c
