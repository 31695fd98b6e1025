#pragma once

// Shared builders for the test suites: the two reference fans and
// deterministic random rationals.

#include "momentweb/job.hpp"

#include <random>

namespace testutil {

using namespace mweb;

inline FanTriangulation hexagon_fan() {
  std::vector<Ray> rays = {{"E", {0, 0}},  {"u1", {-1, -1}}, {"u2", {0, -1}},
                           {"u3", {1, 0}}, {"u4", {1, 1}},   {"u5", {0, 1}},
                           {"u6", {-1, 0}}};
  std::vector<std::array<std::string, 3>> tris;
  for (int j = 1; j <= 6; ++j)
    tris.push_back({"E", "u" + std::to_string(j), "u" + std::to_string(j % 6 + 1)});
  return validate_fan(rays, tris);
}

inline FanTriangulation conifold_fan() {
  std::vector<Ray> rays = {{"u1", {0, 0}}, {"u2", {1, 0}},  {"u3", {0, 3}},
                           {"u4", {-1, 3}}, {"v1", {0, 1}}, {"v2", {0, 2}}};
  std::vector<std::array<std::string, 3>> tris = {
      {"u1", "u2", "v1"}, {"u1", "v1", "u4"}, {"u2", "u4", "v1"},
      {"u2", "u4", "v2"}, {"u2", "u3", "v2"}, {"u3", "u4", "v2"}};
  return validate_fan(rays, tris);
}

// Hexagon omega from the four weights w1..w4 (remaining rays 0).
inline CohClass hexagon_omega(const FanTriangulation& fan, const Rat& w1, const Rat& w2,
                              const Rat& w3, const Rat& w4) {
  return CohClass(fan, {{"u1", w1}, {"u2", w2}, {"u3", w3}, {"u4", w4}});
}

struct Rng {
  std::mt19937 gen{20240824};

  Rat rational(int lo = -9, int hi = 9, int max_den = 7) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
    return Rat(num(gen), den(gen));
  }

  Int integer(int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> num(lo, hi);
    return Int(num(gen));
  }

  // A strictly positive rational.
  Rat positive(int hi = 9, int max_den = 7) {
    std::uniform_int_distribution<int> num(1, hi), den(1, max_den);
    return Rat(num(gen), den(gen));
  }
};

// Random class over all rays of the fan.
inline CohClass random_class(Rng& rng, const FanTriangulation& fan, bool integral) {
  std::vector<Rat> c;
  for (std::size_t i = 0; i < fan.rays().size(); ++i)
    c.push_back(integral ? Rat(rng.integer()) : rng.rational());
  return CohClass(std::move(c));
}

}  // namespace testutil
