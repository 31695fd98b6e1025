#include "momentweb/fan.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace mweb {

namespace {

// True if c lies strictly between a and b on the segment ab.
bool strictly_inside_segment(const Vec2& a, const Vec2& b, const Vec2& c) {
  if (det2(b - a, c - a) != 0) return false;
  return dot(c - a, b - a) > 0 && dot(c - b, a - b) > 0;
}

std::vector<int> convex_hull(const std::vector<Ray>& rays) {
  std::vector<int> idx(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (rays[a].u.x != rays[b].u.x) return rays[a].u.x < rays[b].u.x;
    return rays[a].u.y < rays[b].u.y;
  });
  auto build = [&](std::vector<int> order) {
    std::vector<int> h;
    for (int i : order) {
      while (h.size() >= 2 &&
             det2(rays[h.back()].u - rays[h[h.size() - 2]].u,
                  rays[i].u - rays[h[h.size() - 2]].u) <= 0)
        h.pop_back();
      h.push_back(i);
    }
    return h;
  };
  std::vector<int> lower = build(idx);
  std::reverse(idx.begin(), idx.end());
  std::vector<int> upper = build(idx);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

}  // namespace

int FanTriangulation::ray_index(const std::string& id) const {
  auto it = ray_index_.find(id);
  if (it == ray_index_.end()) throw input_error("unknown ray id \"" + id + "\"");
  return it->second;
}

bool FanTriangulation::is_interior(int ray) const {
  return std::find(interior_.begin(), interior_.end(), ray) != interior_.end();
}

std::array<std::pair<int, int>, 3> FanTriangulation::directed_edges(int tri) const {
  const auto& v = triangles_[tri].v;
  return {{{v[0], v[1]}, {v[1], v[2]}, {v[2], v[0]}}};
}

int FanTriangulation::internal_edge_index(int ray_a, int ray_b) const {
  auto it = internal_index_.find(std::minmax(ray_a, ray_b));
  return it == internal_index_.end() ? -1 : it->second;
}

int FanTriangulation::boundary_edge_index(int ray_a, int ray_b) const {
  auto it = boundary_index_.find(std::minmax(ray_a, ray_b));
  return it == boundary_index_.end() ? -1 : it->second;
}

FanTriangulation validate_fan(std::vector<Ray> rays,
                              std::vector<std::array<std::string, 3>> triangles) {
  FanTriangulation fan;
  fan.rays_ = std::move(rays);

  for (std::size_t i = 0; i < fan.rays_.size(); ++i) {
    if (!fan.ray_index_.emplace(fan.rays_[i].id, static_cast<int>(i)).second)
      throw input_error("duplicate ray id \"" + fan.rays_[i].id + "\"");
    for (std::size_t j = 0; j < i; ++j)
      if (fan.rays_[j].u == fan.rays_[i].u)
        throw input_error("rays \"" + fan.rays_[j].id + "\" and \"" + fan.rays_[i].id +
                          "\" have the same coordinates " + to_string(fan.rays_[i].u));
  }
  if (fan.rays_.empty() || triangles.empty())
    throw input_error("fan needs at least one ray and one triangle");

  for (const auto& t : triangles) {
    std::array<int, 3> v{fan.ray_index(t[0]), fan.ray_index(t[1]), fan.ray_index(t[2])};
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
      throw input_error("triangle (" + t[0] + "," + t[1] + "," + t[2] +
                        ") repeats a ray");
    Int d = det2(fan.rays_[v[1]].u - fan.rays_[v[0]].u,
                 fan.rays_[v[2]].u - fan.rays_[v[0]].u);
    if (d == 0)
      throw input_error("degenerate (collinear) triangle (" + t[0] + "," + t[1] + "," +
                        t[2] + ")");
    if (d < 0) std::swap(v[1], v[2]);
    // Height-1 determinant equals the 2D determinant of offsets.
    if (abs(d) != 1)
      throw input_error("non-unimodular triangle (" + t[0] + "," + t[1] + "," + t[2] +
                        "): determinant " + d.str());
    // Rotate the smallest index first for a canonical representative.
    auto mi = std::min_element(v.begin(), v.end()) - v.begin();
    std::rotate(v.begin(), v.begin() + mi, v.end());
    fan.triangles_.push_back({v});
  }

  {
    std::set<std::array<int, 3>> canonical;
    for (const auto& t : fan.triangles_)
      if (!canonical.insert(t.v).second)
        throw input_error("duplicate triangle in input");
  }

  // Edge-to-edge: no ray may sit strictly inside another triangle's edge.
  for (const auto& t : fan.triangles_)
    for (int k = 0; k < 3; ++k) {
      int a = t.v[k], b = t.v[(k + 1) % 3];
      for (std::size_t c = 0; c < fan.rays_.size(); ++c)
        if (static_cast<int>(c) != a && static_cast<int>(c) != b &&
            strictly_inside_segment(fan.rays_[a].u, fan.rays_[b].u, fan.rays_[c].u))
          throw input_error("ray \"" + fan.rays_[c].id + "\" lies inside edge (" +
                            fan.rays_[a].id + "," + fan.rays_[b].id +
                            "): not an edge-to-edge triangulation");
    }

  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (std::size_t ti = 0; ti < fan.triangles_.size(); ++ti)
    for (int k = 0; k < 3; ++k) {
      auto key = std::minmax(fan.triangles_[ti].v[k], fan.triangles_[ti].v[(k + 1) % 3]);
      auto& ts = edge_tris[key];
      if (std::find(ts.begin(), ts.end(), static_cast<int>(ti)) != ts.end())
        throw input_error("duplicate triangle in input");
      ts.push_back(static_cast<int>(ti));
    }

  for (const auto& [key, ts] : edge_tris) {
    const std::string edge_name =
        "(" + fan.rays_[key.first].id + "," + fan.rays_[key.second].id + ")";
    if (ts.size() == 1) {
      fan.boundary_index_[key] = static_cast<int>(fan.boundary_.size());
      fan.boundary_.push_back({key.first, key.second, ts[0]});
    } else if (ts.size() == 2) {
      auto apex = [&](int tri) {
        for (int v : fan.triangles_[tri].v)
          if (v != key.first && v != key.second) return v;
        throw internal_error("triangle without apex for edge " + edge_name);
      };
      InternalEdge e{key.first, key.second, ts[0], ts[1], apex(ts[0]), apex(ts[1])};
      // The two apexes must lie strictly on opposite sides of the edge.
      Vec2 d = fan.rays_[e.ray_b].u - fan.rays_[e.ray_a].u;
      Int sa = det2(d, fan.rays_[e.apex_a].u - fan.rays_[e.ray_a].u);
      Int sb = det2(d, fan.rays_[e.apex_b].u - fan.rays_[e.ray_a].u);
      if (sa == 0 || sb == 0 || (sa > 0) == (sb > 0))
        throw input_error("triangles adjacent to edge " + edge_name +
                          " overlap: apexes do not lie on opposite sides");
      fan.internal_index_[key] = static_cast<int>(fan.internal_.size());
      fan.internal_.push_back(e);
    } else {
      throw input_error("edge " + edge_name + " is shared by " +
                        std::to_string(ts.size()) + " triangles");
    }
  }

  // Dual adjacency graph must be connected.
  std::vector<char> seen(fan.triangles_.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (auto [a, b] : fan.directed_edges(t)) {
      int ei = fan.internal_edge_index(a, b);
      if (ei < 0) continue;
      int other = fan.internal_[ei].tri_a == t ? fan.internal_[ei].tri_b
                                               : fan.internal_[ei].tri_a;
      if (!seen[other]) {
        seen[other] = 1;
        q.push(other);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw input_error("dual adjacency graph of triangles is disconnected");

  // A ray is interior iff its incident triangles close up into a cycle,
  // equivalently every incident edge is internal.
  for (std::size_t r = 0; r < fan.rays_.size(); ++r) {
    bool incident = false, all_internal = true;
    for (const auto& [key, ts] : edge_tris)
      if (key.first == static_cast<int>(r) || key.second == static_cast<int>(r)) {
        incident = true;
        if (ts.size() != 2) all_internal = false;
      }
    if (!incident)
      throw input_error("ray \"" + fan.rays_[r].id + "\" is not used by any triangle");
    if (all_internal) fan.interior_.push_back(static_cast<int>(r));
  }
  // The star walk doubles as the cycle check.
  for (int r : fan.interior_) star_of_interior_ray(fan, r);

  // Goodness of the boundary polygon: warn if a ray sits strictly inside
  // a hull side.
  std::vector<int> hull = convex_hull(fan.rays_);
  for (std::size_t h = 0; h < hull.size(); ++h) {
    const Vec2& a = fan.rays_[hull[h]].u;
    const Vec2& b = fan.rays_[hull[(h + 1) % hull.size()]].u;
    for (const auto& ray : fan.rays_)
      if (strictly_inside_segment(a, b, ray.u))
        fan.warnings_.push_back("boundary polygon is not good: ray \"" + ray.id +
                                "\" lies inside a hull edge");
  }

  // Interior rays whose star contains another interior ray fall outside
  // the combinatorial types the formulas were derived for; flag them.
  for (int r : fan.interior_)
    for (int n : star_of_interior_ray(fan, r))
      if (fan.is_interior(n))
        fan.warnings_.push_back("interior ray \"" + fan.rays_[r].id +
                                "\" has interior neighbour \"" + fan.rays_[n].id + "\"");

  return fan;
}

QuadRelation quad_relation(const FanTriangulation& fan, const InternalEdge& edge) {
  const Vec2& v1 = fan.u(edge.ray_a);
  const Vec2& v2 = fan.u(edge.ray_b);
  Vec2 rhs2 = -(fan.u(edge.apex_a) + fan.u(edge.apex_b));

  // Solve y1*(v1,1) + y2*(v2,1) = (rhs2,-2) over the integers.
  struct Row {
    Int c1, c2, r;
  };
  const Row rows[3] = {{v1.x, v2.x, rhs2.x}, {v1.y, v2.y, rhs2.y}, {1, 1, Int(-2)}};
  Int y1, y2;
  bool solved = false;
  for (int i = 0; i < 3 && !solved; ++i)
    for (int j = i + 1; j < 3 && !solved; ++j) {
      Int d = rows[i].c1 * rows[j].c2 - rows[i].c2 * rows[j].c1;
      if (d == 0) continue;
      Int n1 = rows[i].r * rows[j].c2 - rows[i].c2 * rows[j].r;
      Int n2 = rows[i].c1 * rows[j].r - rows[i].r * rows[j].c1;
      if (n1 % d != 0 || n2 % d != 0) continue;
      y1 = n1 / d;
      y2 = n2 / d;
      solved = true;
    }
  if (!solved)
    throw internal_error("quadrilateral relation has no integer solution for edge (" +
                         fan.rays()[edge.ray_a].id + "," + fan.rays()[edge.ray_b].id + ")");
  for (const Row& row : rows)
    if (row.c1 * y1 + row.c2 * y2 != row.r)
      throw internal_error("quadrilateral relation inconsistent for edge (" +
                           fan.rays()[edge.ray_a].id + "," + fan.rays()[edge.ray_b].id +
                           ")");
  return {edge.apex_a, edge.apex_b, edge.ray_a, edge.ray_b, y1, y2};
}

QuadRelation quad_relation(const FanTriangulation& fan, int internal_edge) {
  return quad_relation(fan, fan.internal_edges()[internal_edge]);
}

std::vector<int> star_of_interior_ray(const FanTriangulation& fan, int ray) {
  if (!fan.is_interior(ray))
    throw input_error("ray \"" + fan.rays()[ray].id + "\" is not an interior ray");

  // Each incident triangle (E, x, y), read anticlockwise from E, maps
  // x -> y; chaining these successors walks the star anticlockwise.
  std::map<int, int> succ;
  int count = 0;
  for (std::size_t t = 0; t < fan.triangles().size(); ++t) {
    const auto& v = fan.triangles()[t].v;
    for (int k = 0; k < 3; ++k)
      if (v[k] == ray) {
        if (!succ.emplace(v[(k + 1) % 3], v[(k + 2) % 3]).second)
          throw internal_error("star of \"" + fan.rays()[ray].id +
                               "\" is not a simple cycle");
        ++count;
      }
  }
  if (count < 3)
    throw internal_error("star of \"" + fan.rays()[ray].id + "\" has fewer than 3 cones");
  std::vector<int> star;
  int start = succ.begin()->first;
  int cur = start;
  do {
    star.push_back(cur);
    auto it = succ.find(cur);
    if (it == succ.end())
      throw internal_error("star of \"" + fan.rays()[ray].id + "\" does not close up");
    cur = it->second;
  } while (cur != start && star.size() <= succ.size());
  if (cur != start || star.size() != succ.size())
    throw internal_error("star of \"" + fan.rays()[ray].id + "\" does not close up");
  return star;
}

}  // namespace mweb
