#pragma once

// Height-1 lattice fan triangulations: validation, edge classification,
// interior-ray stars and quadrilateral relations.

#include "momentweb/lattice.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mweb {

struct Ray {
  std::string id;
  Vec2 u;  // 2D offset; implicit third coordinate 1
};

// Vertices stored as ray indices, anticlockwise (reordered on ingestion
// by rotating to the smallest index and swapping for orientation).
struct Triangle {
  std::array<int, 3> v;
};

struct InternalEdge {
  int ray_a, ray_b;  // ray_a < ray_b
  int tri_a, tri_b;  // tri_a < tri_b
  int apex_a, apex_b;  // third vertex of tri_a resp. tri_b
};

struct BoundaryEdge {
  int ray_a, ray_b;  // ray_a < ray_b
  int tri;
};

// u_{apex1} + u_{apex2} + y1*u_{edge1} + y2*u_{edge2} = 0 as height-1
// 3D vectors, with y1 + y2 = -2.
struct QuadRelation {
  int apex1, apex2;
  int edge1, edge2;
  Int y1, y2;
};

class FanTriangulation {
 public:
  const std::vector<Ray>& rays() const { return rays_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<InternalEdge>& internal_edges() const { return internal_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_; }
  const std::vector<int>& interior_rays() const { return interior_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  int ray_index(const std::string& id) const;
  bool is_interior(int ray) const;
  const Vec2& u(int ray) const { return rays_[ray].u; }

  // For triangle t, the directed anticlockwise cycle as three (from, to)
  // ray-index pairs.
  std::array<std::pair<int, int>, 3> directed_edges(int tri) const;

  // Index into internal_edges() / boundary_edges() for the unordered ray
  // pair, or -1.
  int internal_edge_index(int ray_a, int ray_b) const;
  int boundary_edge_index(int ray_a, int ray_b) const;

 private:
  friend FanTriangulation validate_fan(std::vector<Ray> rays,
                                       std::vector<std::array<std::string, 3>> triangles);

  std::vector<Ray> rays_;
  std::vector<Triangle> triangles_;
  std::vector<InternalEdge> internal_;
  std::vector<BoundaryEdge> boundary_;
  std::vector<int> interior_;
  std::vector<std::string> warnings_;
  std::map<std::string, int> ray_index_;
  std::map<std::pair<int, int>, int> internal_index_;
  std::map<std::pair<int, int>, int> boundary_index_;
};

FanTriangulation validate_fan(std::vector<Ray> rays,
                              std::vector<std::array<std::string, 3>> triangles);

QuadRelation quad_relation(const FanTriangulation& fan, const InternalEdge& edge);
QuadRelation quad_relation(const FanTriangulation& fan, int internal_edge);

// Neighbours of an interior ray in anticlockwise cyclic order, starting
// at the smallest ray index; the m triangles (E, u_j, u_{j+1}) are
// exactly the triangles containing E.
std::vector<int> star_of_interior_ray(const FanTriangulation& fan, int ray);

}  // namespace mweb
