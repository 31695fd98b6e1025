#pragma once

// The planar multi-moment graph: vertex positions, decorated compact
// edges and boundary rays, with exact consistency checks.

#include "momentweb/classes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mweb {

struct WebVertex {
  std::string id;
  RatVec2 mu;
  std::optional<std::string> fixed_point_label;
};

struct WebEdge {
  int from, to;
  Vec2 r;          // primitive stabiliser; mu(to) - mu(from) = t * j2(r)
  Rat t;           // [omega]-degree
  std::optional<Rat> s;  // [F]-degree, filled by the lift
  int source_edge; // fan internal-edge index, or -1 for user edges
};

struct WebRay {
  int at;
  Vec2 r;     // stabiliser, sign-normalised so that j2(r) = dir2
  Vec2 dir2;  // outward primitive direction
  int source_edge;  // fan boundary-edge index, or -1
};

struct MomentWeb {
  std::vector<WebVertex> vertices;
  std::vector<WebEdge> edges;
  std::vector<WebRay> rays;
  int basepoint = 0;
  bool fan_mode = false;
  std::vector<std::string> warnings;

  int vertex_index(const std::string& id) const;
};

// One vertex per triangle, positions assigned by breadth-first
// propagation over the dual graph; path-independence of positions is
// verified exactly on every non-tree edge.
MomentWeb build_moment_web(const FanTriangulation& fan, const CohClass& omega,
                           int basepoint_triangle = 0, RatVec2 basepoint_mu = {},
                           bool allow_non_kaehler = false);

struct TensionReport {
  bool ok;
  std::vector<int> violations;  // vertex indices
};

// At each vertex the outgoing primitive directions (edges and rays) must
// sum to zero.
TensionReport zero_tension_check(const MomentWeb& web);

// Sum_j t_j j2(u_j - u_E) per interior ray; zero for every class.
std::vector<std::pair<int, RatVec2>> mu_holonomy_check(const FanTriangulation& fan,
                                                       const CohClass& omega);

struct UserVertex {
  std::string id;
  std::optional<RatVec2> mu;
};
struct UserEdge {
  std::string from, to;
  Vec2 r;
  Rat t;
  Rat s;
};
struct UserRay {
  std::string at;
  Vec2 r;
  Vec2 dir2;
};

MomentWeb ingest_user_web(const std::vector<UserVertex>& vertices,
                          const std::vector<UserEdge>& edges,
                          const std::vector<UserRay>& rays,
                          const std::string& basepoint_id, RatVec2 basepoint_mu,
                          bool allow_non_kaehler = false);

// Warns (does not fail) when two vertices coincide or a vertex lies in
// the relative interior of a non-incident edge segment.
std::vector<std::string> embeddedness_warnings(const MomentWeb& web);

}  // namespace mweb
