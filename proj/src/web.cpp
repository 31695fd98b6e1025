#include "momentweb/web.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace mweb {

int MomentWeb::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  throw input_error("unknown web vertex \"" + id + "\"");
}

MomentWeb build_moment_web(const FanTriangulation& fan, const CohClass& omega,
                           int basepoint_triangle, RatVec2 basepoint_mu,
                           bool allow_non_kaehler) {
  if (basepoint_triangle < 0 ||
      basepoint_triangle >= static_cast<int>(fan.triangles().size()))
    throw input_error("basepoint triangle index out of range");

  KaehlerReport kr = kaehler_cone_check(fan, omega);
  if (!kr.ok) {
    std::string edges;
    for (int e : kr.violations) {
      const auto& ie = fan.internal_edges()[e];
      edges += " (" + fan.rays()[ie.ray_a].id + "," + fan.rays()[ie.ray_b].id + ")";
    }
    if (!allow_non_kaehler)
      throw input_error("class is not in the Kaehler cone; nonpositive edges:" + edges);
  }

  MomentWeb web;
  web.fan_mode = true;
  web.basepoint = basepoint_triangle;
  web.warnings = fan.warnings();
  if (!kr.ok) web.warnings.push_back("omega is not Kaehler; web may degenerate");

  const int n = static_cast<int>(fan.triangles().size());
  web.vertices.resize(n);
  for (int t = 0; t < n; ++t) web.vertices[t].id = std::to_string(t);

  std::vector<Rat> degree(fan.internal_edges().size());
  for (std::size_t e = 0; e < degree.size(); ++e)
    degree[e] = curve_degree(fan, omega, static_cast<int>(e));

  std::vector<char> placed(n, 0);
  web.vertices[basepoint_triangle].mu = basepoint_mu;
  placed[basepoint_triangle] = 1;
  std::queue<int> q;
  q.push(basepoint_triangle);
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (auto [x, y] : fan.directed_edges(t)) {
      int ei = fan.internal_edge_index(x, y);
      if (ei < 0) continue;
      const auto& ie = fan.internal_edges()[ei];
      int other = ie.tri_a == t ? ie.tri_b : ie.tri_a;
      // Crossing the edge traversed x -> y in this triangle's
      // anticlockwise cycle: stabiliser r = x - y, outward normal j2(r).
      Vec2 r = fan.u(x) - fan.u(y);
      RatVec2 mu = web.vertices[t].mu + scaled_j2(degree[ei], r);
      if (!placed[other]) {
        web.vertices[other].mu = mu;
        placed[other] = 1;
        q.push(other);
      } else if (web.vertices[other].mu != mu) {
        throw internal_error("position holonomy failure across edge (" +
                             fan.rays()[x].id + "," + fan.rays()[y].id + ")");
      }
    }
  }

  for (std::size_t e = 0; e < fan.internal_edges().size(); ++e) {
    const auto& ie = fan.internal_edges()[e];
    // Orient from tri_a; r follows tri_a's anticlockwise traversal.
    int x = -1, y = -1;
    for (auto [a, b] : fan.directed_edges(ie.tri_a))
      if (std::minmax(a, b) == std::minmax(ie.ray_a, ie.ray_b)) {
        x = a;
        y = b;
      }
    web.edges.push_back({ie.tri_a, ie.tri_b, fan.u(x) - fan.u(y), degree[e],
                         std::nullopt, static_cast<int>(e)});
  }
  for (std::size_t e = 0; e < fan.boundary_edges().size(); ++e) {
    const auto& be = fan.boundary_edges()[e];
    int x = -1, y = -1;
    for (auto [a, b] : fan.directed_edges(be.tri))
      if (std::minmax(a, b) == std::minmax(be.ray_a, be.ray_b)) {
        x = a;
        y = b;
      }
    Vec2 r = fan.u(x) - fan.u(y);
    web.rays.push_back({be.tri, r, j2(r), static_cast<int>(e)});
  }

  for (const auto& w : embeddedness_warnings(web)) web.warnings.push_back(w);
  return web;
}

TensionReport zero_tension_check(const MomentWeb& web) {
  std::vector<Vec2> sum(web.vertices.size(), Vec2{0, 0});
  for (const auto& e : web.edges) {
    sum[e.from] = sum[e.from] + j2(e.r);
    sum[e.to] = sum[e.to] - j2(e.r);
  }
  for (const auto& r : web.rays) sum[r.at] = sum[r.at] + r.dir2;
  TensionReport report{true, {}};
  for (std::size_t v = 0; v < sum.size(); ++v)
    if (!sum[v].is_zero()) {
      report.ok = false;
      report.violations.push_back(static_cast<int>(v));
    }
  return report;
}

std::vector<std::pair<int, RatVec2>> mu_holonomy_check(const FanTriangulation& fan,
                                                       const CohClass& omega) {
  std::vector<std::pair<int, RatVec2>> out;
  for (int e : fan.interior_rays()) {
    RatVec2 sum{};
    for (int j : star_of_interior_ray(fan, e)) {
      Rat t = curve_degree(fan, omega, fan.internal_edge_index(e, j));
      sum = sum + scaled_j2(t, fan.u(j) - fan.u(e));
    }
    out.emplace_back(e, sum);
  }
  return out;
}

MomentWeb ingest_user_web(const std::vector<UserVertex>& vertices,
                          const std::vector<UserEdge>& edges,
                          const std::vector<UserRay>& rays,
                          const std::string& basepoint_id, RatVec2 basepoint_mu,
                          bool allow_non_kaehler) {
  MomentWeb web;
  web.fan_mode = false;
  for (const auto& v : vertices) {
    for (const auto& w : web.vertices)
      if (w.id == v.id) throw input_error("duplicate web vertex \"" + v.id + "\"");
    web.vertices.push_back({v.id, v.mu.value_or(RatVec2{}), std::nullopt});
  }
  web.basepoint = web.vertex_index(basepoint_id);

  for (const auto& e : edges) {
    if (!is_primitive(e.r))
      throw input_error("edge " + e.from + "->" + e.to + " has non-primitive stabiliser " +
                        to_string(e.r));
    if (e.t <= 0 && !allow_non_kaehler)
      throw input_error("edge " + e.from + "->" + e.to + " has nonpositive degree t = " +
                        to_string(e.t));
    web.edges.push_back({web.vertex_index(e.from), web.vertex_index(e.to), e.r, e.t,
                         e.s, -1});
  }
  for (const auto& r : rays) {
    if (!is_primitive(r.dir2))
      throw input_error("ray at " + r.at + " has non-primitive direction " +
                        to_string(r.dir2));
    Vec2 stab = r.r;
    if (j2(stab) == -r.dir2) stab = -stab;
    if (j2(stab) != r.dir2)
      throw input_error("ray at " + r.at + ": direction " + to_string(r.dir2) +
                        " is not +-j2 of stabiliser " + to_string(r.r));
    web.rays.push_back({web.vertex_index(r.at), stab, r.dir2, -1});
  }

  // Complete positions by the same propagation rule, then check any
  // user-supplied positions against the result.
  std::vector<char> placed(web.vertices.size(), 0);
  std::vector<RatVec2> mu(web.vertices.size());
  mu[web.basepoint] = basepoint_mu;
  placed[web.basepoint] = 1;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& e : web.edges) {
      if (placed[e.from] && !placed[e.to]) {
        mu[e.to] = mu[e.from] + scaled_j2(e.t, e.r);
        placed[e.to] = progress = true;
      } else if (placed[e.to] && !placed[e.from]) {
        mu[e.from] = mu[e.to] - scaled_j2(e.t, e.r);
        placed[e.from] = progress = true;
      } else if (placed[e.from] && placed[e.to]) {
        if (mu[e.to] != mu[e.from] + scaled_j2(e.t, e.r))
          throw input_error("position holonomy failure across edge " +
                            web.vertices[e.from].id + "->" + web.vertices[e.to].id);
      }
    }
  }
  for (std::size_t v = 0; v < web.vertices.size(); ++v) {
    if (!placed[v])
      throw input_error("vertex \"" + web.vertices[v].id +
                        "\" is not connected to the basepoint");
    if (vertices[v].mu && *vertices[v].mu != mu[v])
      throw input_error("vertex \"" + web.vertices[v].id +
                        "\" position disagrees with propagation");
    web.vertices[v].mu = mu[v];
  }
  // Final holonomy pass over every edge.
  for (const auto& e : web.edges)
    if (web.vertices[e.to].mu != web.vertices[e.from].mu + scaled_j2(e.t, e.r))
      throw input_error("position holonomy failure across edge " +
                        web.vertices[e.from].id + "->" + web.vertices[e.to].id);

  std::vector<int> valence(web.vertices.size(), 0);
  for (const auto& e : web.edges) {
    ++valence[e.from];
    ++valence[e.to];
  }
  for (const auto& r : web.rays) ++valence[r.at];
  for (std::size_t v = 0; v < valence.size(); ++v)
    if (valence[v] != 3)
      throw input_error("vertex \"" + web.vertices[v].id + "\" has valence " +
                        std::to_string(valence[v]) + ", expected 3");

  TensionReport tension = zero_tension_check(web);
  if (!tension.ok)
    throw input_error("zero-tension fails at vertex \"" +
                      web.vertices[tension.violations.front()].id + "\"");

  for (const auto& w : embeddedness_warnings(web)) web.warnings.push_back(w);
  return web;
}

std::vector<std::string> embeddedness_warnings(const MomentWeb& web) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < web.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < web.vertices.size(); ++j)
      if (web.vertices[i].mu == web.vertices[j].mu)
        out.push_back("vertices \"" + web.vertices[i].id + "\" and \"" +
                      web.vertices[j].id + "\" coincide at " +
                      to_string(web.vertices[i].mu));
  for (const auto& e : web.edges) {
    const RatVec2& a = web.vertices[e.from].mu;
    const RatVec2& b = web.vertices[e.to].mu;
    for (std::size_t v = 0; v < web.vertices.size(); ++v) {
      if (static_cast<int>(v) == e.from || static_cast<int>(v) == e.to) continue;
      const RatVec2& p = web.vertices[v].mu;
      Rat cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (cross != 0) continue;
      Rat along = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
      Rat len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
      if (along > 0 && along < len2)
        out.push_back("vertex \"" + web.vertices[v].id +
                      "\" lies in the interior of edge " + web.vertices[e.from].id +
                      "->" + web.vertices[e.to].id);
    }
  }
  return out;
}

}  // namespace mweb
