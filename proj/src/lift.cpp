#include "momentweb/lift.hpp"

#include <algorithm>
#include <queue>

namespace mweb {

namespace {

struct Propagated {
  std::vector<RatVec2> lambda;
  std::vector<Rat> nu3;
  std::vector<int> cotree_edges;  // edge indices closing a cycle
};

// Breadth-first lambda/nu3 propagation over a spanning tree in
// deterministic (edge-index) order. Lambda consistency is checked on
// every non-tree edge: lambda holonomy vanishes identically, so a
// failure means a bug, not data.
Propagated propagate(const MomentWeb& web, const std::vector<Rat>& s,
                     const RatVec2& basepoint_lambda, const Rat& basepoint_nu3) {
  const std::size_t n = web.vertices.size();
  Propagated p{std::vector<RatVec2>(n), std::vector<Rat>(n), {}};
  std::vector<std::vector<int>> incident(n);
  for (std::size_t e = 0; e < web.edges.size(); ++e) {
    incident[web.edges[e].from].push_back(static_cast<int>(e));
    incident[web.edges[e].to].push_back(static_cast<int>(e));
  }
  std::vector<char> placed(n, 0);
  std::vector<char> edge_done(web.edges.size(), 0);
  p.lambda[web.basepoint] = basepoint_lambda;
  p.nu3[web.basepoint] = basepoint_nu3;
  placed[web.basepoint] = 1;
  std::queue<int> q;
  q.push(web.basepoint);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int ei : incident[v]) {
      if (edge_done[ei]) continue;
      const WebEdge& e = web.edges[ei];
      int other = e.from == v ? e.to : e.from;
      // Values at the far end as propagation from v predicts them. The
      // nu3 step uses lambda at the edge's "from" end; by quarter-turn
      // orthogonality this equals the value at the "to" end.
      RatVec2 dl = scaled_j2(s[ei], e.r);
      RatVec2 lam_other = e.from == v ? p.lambda[v] - dl : p.lambda[v] + dl;
      Rat step = e.t * dot(e.r, e.from == v ? p.lambda[v] : lam_other);
      if (!placed[other]) {
        p.lambda[other] = lam_other;
        p.nu3[other] = e.from == v ? Rat(p.nu3[v] + step) : Rat(p.nu3[v] - step);
        placed[other] = 1;
        q.push(other);
      } else {
        if (p.lambda[other] != lam_other)
          throw internal_error("lambda path-dependence across edge " +
                               web.vertices[e.from].id + "->" + web.vertices[e.to].id);
        p.cotree_edges.push_back(ei);
      }
      edge_done[ei] = 1;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!placed[v])
      throw input_error("vertex \"" + web.vertices[v].id +
                        "\" is not connected to the basepoint");
  return p;
}

Rat cycle_residual(const MomentWeb& web, const Propagated& p, int edge_index) {
  const WebEdge& e = web.edges[edge_index];
  return p.nu3[e.from] + e.t * dot(e.r, p.lambda[e.from]) - p.nu3[e.to];
}

LiftedWeb finish(MomentWeb web, Propagated p, std::vector<CycleResidual> residuals) {
  LiftedWeb out;
  out.base = std::move(web);
  out.lambda = std::move(p.lambda);
  out.nu3 = std::move(p.nu3);
  out.residuals = std::move(residuals);
  out.closed = std::all_of(out.residuals.begin(), out.residuals.end(),
                           [](const CycleResidual& r) { return r.value == 0; });
  out.rays3d = ray_directions_3d(out.base, out.lambda);
  return out;
}

}  // namespace

LiftedWeb build_lift(const FanTriangulation& fan, const MomentWeb& web,
                     const CohClass& F, RatVec2 basepoint_lambda, Rat basepoint_nu3) {
  if (!web.fan_mode)
    throw input_error("fan-mode lift requested for a user web");
  if (!F.is_integral())
    throw input_error("[F] must have integral divisor coefficients");

  MomentWeb decorated = web;
  std::vector<Rat> s(web.edges.size());
  for (std::size_t e = 0; e < web.edges.size(); ++e) {
    s[e] = curve_degree(fan, F, web.edges[e].source_edge);
    decorated.edges[e].s = s[e];
  }
  Propagated p = propagate(web, s, basepoint_lambda, basepoint_nu3);

  bool cycles_closed = true;
  for (int ei : p.cotree_edges)
    if (cycle_residual(web, p, ei) != 0) cycles_closed = false;

  // Residual per interior ray: nu3 holonomy of the star cycle, oriented
  // so that it reports the intersection pairing ([omega] cup [F]).E.
  std::vector<CycleResidual> residuals;
  for (int e_ray : fan.interior_rays()) {
    std::vector<int> star = star_of_interior_ray(fan, e_ray);
    const int m = static_cast<int>(star.size());
    Rat holonomy = 0;
    for (int j = 0; j < m; ++j) {
      int ei = fan.internal_edge_index(e_ray, star[j]);
      const InternalEdge& ie = fan.internal_edges()[ei];
      int prev_neighbor = star[(j + m - 1) % m];
      // The triangle before the crossing is the one containing the
      // previous star neighbour.
      const auto& va = fan.triangles()[ie.tri_a].v;
      bool a_is_prev = std::find(va.begin(), va.end(), prev_neighbor) != va.end();
      int q_prev = a_is_prev ? ie.tri_a : ie.tri_b;
      Vec2 r = fan.u(star[j]) - fan.u(e_ray);
      holonomy += web.edges[ei].t * dot(r, p.lambda[q_prev]);
    }
    residuals.push_back({fan.rays()[e_ray].id, -holonomy});
  }

  bool stars_closed = std::all_of(residuals.begin(), residuals.end(),
                                  [](const CycleResidual& r) { return r.value == 0; });
  if (cycles_closed != stars_closed)
    throw internal_error(
        "interior-ray residuals disagree with fundamental-cycle residuals");

  return finish(std::move(decorated), std::move(p), std::move(residuals));
}

LiftedWeb build_lift(const MomentWeb& web, RatVec2 basepoint_lambda, Rat basepoint_nu3) {
  std::vector<Rat> s(web.edges.size());
  for (std::size_t e = 0; e < web.edges.size(); ++e) {
    if (!web.edges[e].s)
      throw input_error("edge " + web.vertices[web.edges[e].from].id + "->" +
                        web.vertices[web.edges[e].to].id + " has no s value");
    s[e] = *web.edges[e].s;
  }
  Propagated p = propagate(web, s, basepoint_lambda, basepoint_nu3);
  std::vector<CycleResidual> residuals;
  for (int ei : p.cotree_edges)
    residuals.push_back({"cycle:" + std::to_string(ei), cycle_residual(web, p, ei)});
  return finish(web, std::move(p), std::move(residuals));
}

ClosureReport closure_report(const LiftedWeb& lifted, const FanTriangulation* fan,
                             const CohClass* omega, const CohClass* F) {
  ClosureReport report{true, lifted.residuals};
  for (const auto& r : report.per_cycle)
    if (r.value != 0) report.closed = false;
  if (lifted.base.fan_mode && fan && omega && F) {
    for (const auto& r : report.per_cycle) {
      Rat cup = cup_on_divisor(*fan, *omega, *F, fan->ray_index(r.key));
      if (cup != r.value)
        throw internal_error("residual at interior ray \"" + r.key + "\" is " +
                             to_string(r.value) + " but ([omega] cup [F]).E = " +
                             to_string(cup));
    }
  }
  if (report.closed != lifted.closed)
    throw internal_error("closure verdict mismatch");
  return report;
}

LiftedWeb gauge_transform(const LiftedWeb& lifted, const GaugeShift& shift) {
  LiftedWeb out = lifted;
  for (std::size_t v = 0; v < out.lambda.size(); ++v) {
    const RatVec2& mu = out.base.vertices[v].mu;
    out.nu3[v] = out.nu3[v] - shift.lambda0.y * mu.x + shift.lambda0.x * mu.y;
    out.lambda[v] = out.lambda[v] + shift.lambda0;
  }
  out.rays3d = ray_directions_3d(out.base, out.lambda);
  return out;
}

std::vector<Vec3> ray_directions_3d(const MomentWeb& web,
                                    const std::vector<RatVec2>& lambda) {
  std::vector<Vec3> out;
  for (const auto& ray : web.rays) {
    Rat third = dot(ray.r, lambda[ray.at]);
    Int den = denominator(third);
    Int x = ray.dir2.x * den, y = ray.dir2.y * den, z = numerator(third);
    Int g = gcd(gcd(abs(x), abs(y)), abs(z));
    if (g > 1) {
      x /= g;
      y /= g;
      z /= g;
    }
    out.push_back({x, y, z});
  }
  return out;
}

}  // namespace mweb
