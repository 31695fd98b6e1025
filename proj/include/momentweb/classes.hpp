#pragma once

// Degree-2 cohomology classes as divisor coefficient vectors, curve
// degrees via quadrilateral relations, restricted triple intersections
// on the star of a compact divisor, and the cup product pairing.

#include "momentweb/fan.hpp"

#include <map>
#include <vector>

namespace mweb {

// Coefficient vector over the ray divisors D_1,...,D_r; absent rays
// contribute 0. Stored raw: curve degrees and cup products are invariant
// under the three divisor relations, so no quotient normal form is kept.
class CohClass {
 public:
  CohClass(const FanTriangulation& fan, const std::map<std::string, Rat>& coeffs);
  explicit CohClass(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {}

  const Rat& operator[](int ray) const { return c_[ray]; }
  std::size_t size() const { return c_.size(); }
  bool is_integral() const;

 private:
  std::vector<Rat> c_;
};

struct KaehlerReport {
  bool ok;
  std::vector<int> violations;  // internal edge indices with degree <= 0
};

// Pairing of the class with the compact curve dual to an internal edge.
Rat curve_degree(const FanTriangulation& fan, const CohClass& cls, int internal_edge);

KaehlerReport kaehler_cone_check(const FanTriangulation& fan, const CohClass& omega);

// Triple intersection A.B.E for A, B in the closed star of the interior
// ray E (either E itself or one of its star neighbours). Arguments
// outside the closed star are an error, not zero.
Int restricted_triple(const FanTriangulation& fan, int e_ray, int a_ray, int b_ray);

// ([omega] cup [F]).E via the closed form sum_j t_j (f_j - f_E) over the
// star of the interior ray.
Rat cup_on_divisor(const FanTriangulation& fan, const CohClass& omega,
                   const CohClass& F, int e_ray);

}  // namespace mweb
