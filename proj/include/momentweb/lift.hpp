#pragma once

// Lift of a planar moment web to the 3D multi-moment graph: lambda and
// nu3 propagation, closure residuals, gauge shifts and 3D ray
// directions.

#include "momentweb/web.hpp"

namespace mweb {

struct CycleResidual {
  std::string key;  // interior ray id (fan mode) or "cycle:<edge index>"
  Rat value;
};

struct LiftedWeb {
  MomentWeb base;
  std::vector<RatVec2> lambda;  // per vertex
  std::vector<Rat> nu3;         // per vertex (spanning-tree values when open)
  std::vector<CycleResidual> residuals;
  bool closed = false;
  std::vector<Vec3> rays3d;  // per base.rays entry, primitive integer triple
};

struct GaugeShift {
  RatVec2 lambda0;
};

// Fan mode: s_e = curve_degree(F, e) per compact edge; F must be
// integral. Residuals are indexed by interior rays and oriented so that
// residual(E) = ([omega] cup [F]).E.
LiftedWeb build_lift(const FanTriangulation& fan, const MomentWeb& web,
                     const CohClass& F, RatVec2 basepoint_lambda = {},
                     Rat basepoint_nu3 = 0);

// User mode: s values are taken from the web's edges; residuals are
// indexed by the non-tree edges of the deterministic spanning tree.
LiftedWeb build_lift(const MomentWeb& web, RatVec2 basepoint_lambda = {},
                     Rat basepoint_nu3 = 0);

struct ClosureReport {
  bool closed;
  std::vector<CycleResidual> per_cycle;
};

// Re-derives the verdict; in fan mode every residual is cross-checked
// against cup_on_divisor (exact equality, else internal error).
ClosureReport closure_report(const LiftedWeb& lifted, const FanTriangulation* fan,
                             const CohClass* omega, const CohClass* F);

// (mu1, mu2, nu3) -> (mu1, mu2, nu3 - l2 mu1 + l1 mu2), lambda -> lambda + l0.
LiftedWeb gauge_transform(const LiftedWeb& lifted, const GaugeShift& shift);

// (-r2, r1, r1 l1 + r2 l2) per unbounded ray, cleared to a primitive
// integer triple whose 2D part is a positive multiple of the outward
// direction.
std::vector<Vec3> ray_directions_3d(const MomentWeb& web,
                                    const std::vector<RatVec2>& lambda);

}  // namespace mweb
