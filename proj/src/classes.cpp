#include "momentweb/classes.hpp"

#include <algorithm>

namespace mweb {

CohClass::CohClass(const FanTriangulation& fan, const std::map<std::string, Rat>& coeffs)
    : c_(fan.rays().size(), Rat(0)) {
  for (const auto& [id, value] : coeffs) c_[fan.ray_index(id)] = value;
}

bool CohClass::is_integral() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const Rat& r) { return denominator(r) == 1; });
}

Rat curve_degree(const FanTriangulation& fan, const CohClass& cls, int internal_edge) {
  QuadRelation q = quad_relation(fan, internal_edge);
  return cls[q.apex1] + cls[q.apex2] + Rat(q.y1) * cls[q.edge1] +
         Rat(q.y2) * cls[q.edge2];
}

KaehlerReport kaehler_cone_check(const FanTriangulation& fan, const CohClass& omega) {
  KaehlerReport report{true, {}};
  for (std::size_t e = 0; e < fan.internal_edges().size(); ++e)
    if (curve_degree(fan, omega, static_cast<int>(e)) <= 0) {
      report.ok = false;
      report.violations.push_back(static_cast<int>(e));
    }
  return report;
}

namespace {

// (a_j, b_j) with u_{j-1} + u_{j+1} + a_j u_j + b_j u_E = 0 for the star
// neighbour u_j of E.
std::pair<Int, Int> self_coefficients(const FanTriangulation& fan, int e_ray, int j_ray) {
  int ei = fan.internal_edge_index(e_ray, j_ray);
  if (ei < 0)
    throw internal_error("star edge (" + fan.rays()[e_ray].id + "," +
                         fan.rays()[j_ray].id + ") is not internal");
  QuadRelation q = quad_relation(fan, ei);
  return q.edge1 == j_ray ? std::pair{q.y1, q.y2} : std::pair{q.y2, q.y1};
}

}  // namespace

Int restricted_triple(const FanTriangulation& fan, int e_ray, int a_ray, int b_ray) {
  std::vector<int> star = star_of_interior_ray(fan, e_ray);
  auto star_pos = [&](int ray) {
    auto it = std::find(star.begin(), star.end(), ray);
    if (it == star.end() && ray != e_ray)
      throw input_error("ray \"" + fan.rays()[ray].id + "\" is not in the closed star of \"" +
                        fan.rays()[e_ray].id + "\"");
    return it == star.end() ? -1 : static_cast<int>(it - star.begin());
  };
  int pa = star_pos(a_ray);
  int pb = star_pos(b_ray);
  const int m = static_cast<int>(star.size());

  if (pa < 0 && pb < 0) {  // E.E.E = -sum_j b_j
    Int sum = 0;
    for (int j : star) sum += self_coefficients(fan, e_ray, j).second;
    return -sum;
  }
  if (pa < 0 || pb < 0) {  // A_j.E.E = b_j
    return self_coefficients(fan, e_ray, pa < 0 ? b_ray : a_ray).second;
  }
  if (pa == pb) return self_coefficients(fan, e_ray, a_ray).first;  // A_j.A_j.E = a_j
  int gap = (pa - pb + m) % m;
  return (gap == 1 || gap == m - 1) ? Int(1) : Int(0);
}

Rat cup_on_divisor(const FanTriangulation& fan, const CohClass& omega,
                   const CohClass& F, int e_ray) {
  Rat sum = 0;
  for (int j : star_of_interior_ray(fan, e_ray)) {
    int ei = fan.internal_edge_index(e_ray, j);
    sum += curve_degree(fan, omega, ei) * (F[j] - F[e_ray]);
  }
  return sum;
}

}  // namespace mweb
