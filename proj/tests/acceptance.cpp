// Acceptance suite: one pass/fail line per criterion, all checks exact
// (zero tolerance). Returns nonzero if any criterion fails.

#include "momentweb/job.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#ifndef _WIN32
#include <sys/wait.h>
#endif

using namespace mweb;

namespace {

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void()>& body) {
  try {
    body();
    std::cout << "[PASS] criterion " << n << ": " << title << "\n";
  } catch (const std::exception& e) {
    ++failures;
    std::cout << "[FAIL] criterion " << n << ": " << title << " -- " << e.what() << "\n";
  }
}

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw check_failure(what);
}

template <typename T, typename U>
void expect_eq(const T& got, const U& want, const std::string& what) {
  if (!(got == want)) {
    std::ostringstream os;
    os << what << " mismatch";
    throw check_failure(os.str());
  }
}

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

FanTriangulation hexagon() {
  std::vector<Ray> rays = {{"E", {0, 0}},  {"u1", {-1, -1}}, {"u2", {0, -1}},
                           {"u3", {1, 0}}, {"u4", {1, 1}},   {"u5", {0, 1}},
                           {"u6", {-1, 0}}};
  std::vector<std::array<std::string, 3>> tris;
  for (int j = 1; j <= 6; ++j)
    tris.push_back({"E", "u" + std::to_string(j), "u" + std::to_string(j % 6 + 1)});
  return validate_fan(rays, tris);
}

FanTriangulation conifold() {
  std::vector<Ray> rays = {{"u1", {0, 0}}, {"u2", {1, 0}},  {"u3", {0, 3}},
                           {"u4", {-1, 3}}, {"v1", {0, 1}}, {"v2", {0, 2}}};
  return validate_fan(rays, {{"u1", "u2", "v1"},
                             {"u1", "v1", "u4"},
                             {"u2", "u4", "v1"},
                             {"u2", "u4", "v2"},
                             {"u2", "u3", "v2"},
                             {"u3", "u4", "v2"}});
}

LiftedWeb lift(const FanTriangulation& fan, const CohClass& omega, const CohClass& F) {
  return build_lift(fan, build_moment_web(fan, omega, 0, {}, true), F);
}

std::mt19937 rng(424242);

Rat rat(int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 7);
  return Rat(num(rng), den(rng));
}

Rat pos() {
  std::uniform_int_distribution<int> num(1, 9), den(1, 7);
  return Rat(num(rng), den(rng));
}

Int integer() { return Int(std::uniform_int_distribution<int>(-9, 9)(rng)); }

CohClass random_class(const FanTriangulation& fan, bool integral) {
  std::vector<Rat> c;
  for (std::size_t i = 0; i < fan.rays().size(); ++i)
    c.push_back(integral ? Rat(integer()) : rat());
  return CohClass(std::move(c));
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
#ifndef _WIN32
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
#else
  return status;
#endif
}

void criterion1() {
  FanTriangulation fan = hexagon();
  CohClass omega(fan, {{"u1", 1}, {"u2", 2}, {"u3", 2}, {"u4", 1}});
  CohClass F(fan, {{"u1", 1}, {"u2", 1}, {"u3", -1}, {"u4", -1}});
  LiftedWeb L = lift(fan, omega, F);

  const RatVec2 p[6] = {{0, 0}, {1, 0}, {1, 1}, {0, 2}, {-1, 2}, {-1, 1}};
  for (int v = 0; v < 6; ++v)
    expect_eq(L.base.vertices[v].mu, p[v], "p" + std::to_string(v + 1));
  // lambda(q6) = (0,0) is the value consistent with the propagation rule
  // and the printed nu3 sequence.
  const RatVec2 lambda[6] = {{0, 0}, {1, 0}, {1, -1}, {1, -1}, {0, -1}, {0, 0}};
  for (int v = 1; v < 6; ++v)
    expect_eq(L.lambda[v], lambda[v], "lambda(q" + std::to_string(v + 1) + ")");
  const Rat nu3[6] = {0, 0, 1, 1, 0, 0};
  for (int v = 0; v < 6; ++v)
    expect_eq(L.nu3[v], nu3[v], "nu3(q" + std::to_string(v + 1) + ")");
  expect(L.residuals.size() == 1 && L.residuals[0].value == 0, "closure residual 0");
  expect(L.closed, "closed");
}

void criterion2() {
  FanTriangulation fan = hexagon();
  int E = fan.ray_index("E");
  for (int trial = 0; trial < 25; ++trial) {
    Rat w1 = rat(), w2 = rat(), w3 = rat(), w4 = rat();
    CohClass omega(fan, {{"u1", w1}, {"u2", w2}, {"u3", w3}, {"u4", w4}});
    const Rat expected[6] = {w2 - w1, w1 - w2 + w3, w2 - w3 + w4, w3 - w4, w4, w1};
    for (int j = 1; j <= 6; ++j) {
      int ei = fan.internal_edge_index(E, fan.ray_index("u" + std::to_string(j)));
      expect_eq(curve_degree(fan, omega, ei), expected[j - 1],
                "t" + std::to_string(j));
    }
  }
}

void criterion3() {
  auto run = [](int m, int n, const Rat& k) {
    std::vector<UserVertex> vertices = {{"A", RatVec2{0, 0}}, {"B", {}}, {"C", {}},
                                        {"D", {}}};
    std::vector<UserEdge> edges = {{"A", "B", {1, 0}, k * n, Rat(-n)},
                                   {"B", "D", {0, -1}, k * m, Rat(m)},
                                   {"A", "C", {0, -1}, k * m, Rat(m)},
                                   {"C", "D", {1, 0}, k * n, Rat(-n)}};
    std::vector<UserRay> rays = {{"A", {-1, 1}, {-1, -1}},
                                 {"B", {1, 1}, {-1, 1}},
                                 {"C", {-1, -1}, {1, -1}},
                                 {"D", {1, -1}, {1, 1}}};
    return build_lift(ingest_user_web(vertices, edges, rays, "A", {0, 0}));
  };

  for (auto [m, n, k] : {std::tuple<int, int, Rat>{1, 2, Rat(1)},
                         std::tuple<int, int, Rat>{2, 3, Rat(1, 6)}}) {
    LiftedWeb L = run(m, n, k);
    auto nu = [&](const char* id) {
      int v = L.base.vertex_index(id);
      return std::array<Rat, 3>{L.base.vertices[v].mu.x, L.base.vertices[v].mu.y,
                                L.nu3[v]};
    };
    expect_eq(nu("A"), (std::array<Rat, 3>{0, 0, 0}), "nu(A)");
    expect_eq(nu("B"), (std::array<Rat, 3>{0, k * n, 0}), "nu(B)");
    expect_eq(nu("C"), (std::array<Rat, 3>{k * m, 0, 0}), "nu(C)");
    expect_eq(nu("D"), (std::array<Rat, 3>{k * m, k * n, -k * m * n}), "nu(D)");
    expect_eq(L.lambda[L.base.vertex_index("D")], RatVec2{Rat(-m), Rat(n)}, "lambda(D)");
    expect(L.residuals.size() == 1 && L.residuals[0].value == 0, "cycle residual 0");
  }

  // (m,n,k) = (1,1,-1) must be rejected by the t > 0 check.
  bool rejected = false;
  try {
    run(1, 1, Rat(-1));
  } catch (const input_error&) {
    rejected = true;
  }
  expect(rejected, "k = -1 rejected by the t > 0 check");
}

void criterion4() {
  FanTriangulation fan = conifold();
  for (int trial = 0; trial < 10; ++trial) {
    Rat w2 = -pos();
    Rat w1 = -w2 + pos(), w3 = -w2 + pos();
    Int f1 = integer(), f2 = integer(), f3 = integer();
    CohClass omega(fan, {{"u1", w1}, {"u2", w2}, {"u3", w3}});
    CohClass F(fan, {{"u1", Rat(f1)}, {"u2", Rat(f2)}, {"u3", Rat(f3)}});
    // Gauge lambda(p1) = 0: p1 is triangle index 2, and nu3 differences
    // are gauge-dependent.
    LiftedWeb L = build_lift(fan, build_moment_web(fan, omega, 2, {}, true), F);

    // Fixed points by triangle index: p1 = 2, p2 = 3, p3 = 0, p6 = 4.
    const RatVec2 &p1 = L.base.vertices[2].mu, &p2 = L.base.vertices[3].mu,
                  &p3 = L.base.vertices[0].mu, &p6 = L.base.vertices[4].mu;
    expect_eq(p2 - p1, RatVec2{-3 * w2, -2 * w2}, "p2 - p1 = -w2(3,2)");
    expect_eq(p3 - p1, RatVec2{-(w1 + w2), -(w1 + w2)}, "p3 - p1 = -(w1+w2)(1,1)");
    expect_eq(p6 - p1, RatVec2{2 * w3 - w2, w3 - w2}, "p6 - p1 consistent positions");
    expect_eq(L.lambda[3] - L.lambda[2], RatVec2{Rat(3 * f2), Rat(2 * f2)},
              "lambda(p2) - lambda(p1) = f2(3,2)");
    expect_eq(L.nu3[4] - L.nu3[3], -Rat(f2) * (w2 + w3),
              "nu3(p6) - nu3(p2) = -f2(w2+w3)");
    expect(L.residuals.size() == 2, "two residuals");
    expect_eq(L.residuals[0].value, (Rat(f1) + Rat(f2)) * (w1 + w2), "residual at v1");
    expect_eq(L.residuals[1].value, (Rat(f2) + Rat(f3)) * (w2 + w3), "residual at v2");
    expect(L.closed == (f1 == -f2 && f3 == -f2), "closed iff f1 = -f2 = f3");
  }
}

void criterion5() {
  int checked = 0;
  for (const FanTriangulation& fan : {hexagon(), conifold()}) {
    for (int trial = 0; trial < 60; ++trial) {
      CohClass omega = random_class(fan, false);
      CohClass F = random_class(fan, true);
      LiftedWeb L = lift(fan, omega, F);
      for (const auto& r : L.residuals) {
        int E = fan.ray_index(r.key);
        expect_eq(r.value, cup_on_divisor(fan, omega, F, E),
                  "residual vs closed form at " + r.key);
        std::vector<int> closed_star = star_of_interior_ray(fan, E);
        closed_star.push_back(E);
        Rat expansion = 0;
        for (int a : closed_star)
          for (int b : closed_star)
            expansion += omega[a] * F[b] * Rat(restricted_triple(fan, E, a, b));
        expect_eq(r.value, expansion, "residual vs triple expansion at " + r.key);
        ++checked;
      }
    }
  }
  expect(checked >= 100, "at least 100 random instances");
}

void criterion6() {
  for (const FanTriangulation& fan : {hexagon(), conifold()}) {
    for (int trial = 0; trial < 10; ++trial) {
      CohClass omega = random_class(fan, false);
      CohClass F = random_class(fan, true);

      // Lemma (t-u): position holonomy vanishes for every class.
      for (const auto& [ray, sum] : mu_holonomy_check(fan, omega))
        expect(sum.x == 0 && sum.y == 0, "position holonomy");

      MomentWeb web = build_moment_web(fan, omega, 0, {}, true);
      expect(zero_tension_check(web).ok, "zero tension");

      LiftedWeb L = build_lift(fan, web, F);
      for (const auto& e : L.base.edges) {
        // lambda holonomy: propagation closes along every edge.
        expect(L.lambda[e.to] == L.lambda[e.from] - scaled_j2(*e.s, e.r),
               "lambda holonomy");
        // Edge-endpoint symmetry of the nu3 increment.
        expect(e.t * dot(e.r, L.lambda[e.from]) == e.t * dot(e.r, L.lambda[e.to]),
               "edge-endpoint symmetry");
      }

      // Gauge covariance: the basepoint-shifted build equals the linear
      // transformation of the unshifted one (basepoint mu is (0,0)).
      RatVec2 lambda0{rat(), rat()};
      LiftedWeb shifted = gauge_transform(L, {lambda0});
      LiftedWeb rebuilt = build_lift(fan, web, F, lambda0, 0);
      for (std::size_t v = 0; v < L.lambda.size(); ++v) {
        expect(rebuilt.lambda[v] == shifted.lambda[v], "gauge covariance (lambda)");
        expect(rebuilt.nu3[v] == shifted.nu3[v], "gauge covariance (nu3)");
        const RatVec2& mu = L.base.vertices[v].mu;
        expect(shifted.nu3[v] == L.nu3[v] - lambda0.y * mu.x + lambda0.x * mu.y,
               "gauge transformation of nu3");
      }
      for (std::size_t i = 0; i < L.residuals.size(); ++i)
        expect(shifted.residuals[i].value == L.residuals[i].value,
               "gauge invariance of residuals");

      // d_j lemma on each star neighbourhood.
      for (int E : fan.interior_rays()) {
        std::vector<int> star = star_of_interior_ray(fan, E);
        const int m = static_cast<int>(star.size());
        auto tri_at = [&](int j) {
          int ei = fan.internal_edge_index(E, star[j % m]);
          const InternalEdge& ie = fan.internal_edges()[ei];
          const auto& va = fan.triangles()[ie.tri_a].v;
          bool a_has_next =
              std::find(va.begin(), va.end(), star[(j + 1) % m]) != va.end();
          return a_has_next ? ie.tri_a : ie.tri_b;
        };
        auto d = [&](int j) {
          Int fE = numerator(F[E]), fj = numerator(F[star[j % m]]),
              fj1 = numerator(F[star[(j + 1) % m]]);
          Vec2 uE = fan.u(E), uj = fan.u(star[j % m]), uj1 = fan.u(star[(j + 1) % m]);
          return (uj - uj1) * fE + (uj1 - uE) * fj - (uj - uE) * fj1;
        };
        for (int j = 0; j < m; ++j) {
          Vec2 rhs = j2(d(j) - d(0));
          expect(L.lambda[tri_at(j)] - L.lambda[tri_at(0)] ==
                     RatVec2{Rat(rhs.x), Rat(rhs.y)},
                 "d_j lemma");
        }
      }
    }
  }
}

void criterion7() {
  // Non-unimodular triangle rejected with its determinant reported.
  bool rejected = false;
  try {
    validate_fan({{"a", {0, 0}}, {"b", {2, 0}}, {"c", {0, 1}}}, {{"a", "b", "c"}});
  } catch (const input_error& e) {
    rejected = std::string(e.what()).find("determinant 2") != std::string::npos;
  }
  expect(rejected, "non-unimodular rejection reports the determinant");

  // E^3 = 6 for the hexagon via -sum b_j.
  FanTriangulation fan = hexagon();
  int E = fan.ray_index("E");
  expect_eq(restricted_triple(fan, E, E, E), Int(6), "E^3 = 6");

  // Float literals rejected.
  bool float_rejected = false;
  try {
    parse_input(R"({"mode":"fan","fan":{"rays":[{"id":"a","u":[0,0]}],
      "triangles":[["a","a","a"]]},"omega":{"a":1.5},"F":{}})");
  } catch (const input_error&) {
    float_rejected = true;
  }
  expect(float_rejected, "float literal rejected");

  // Non-integral F rejected in fan mode.
  bool f_rejected = false;
  try {
    build_lift(fan, build_moment_web(fan, CohClass(fan, {{"u1", 1}, {"u2", 2},
                                                         {"u3", 2}, {"u4", 1}})),
               CohClass(fan, {{"u1", Rat(1, 2)}}));
  } catch (const input_error&) {
    f_rejected = true;
  }
  expect(f_rejected, "non-integral F rejected");

  // Exit codes: 0 on success, 1 on input error, 2 when require_closed is
  // unmet. (3 is reserved for internal cross-check failures, which no
  // well-formed input reaches.)
  expect_eq(run_cli("check " + fixture("hexagon.json")), 0, "exit code 0");
  expect_eq(run_cli("check " + fixture("does_not_exist.json")), 1, "exit code 1 (missing file)");

  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path();
  {
    std::ofstream bad(tmp / "acceptance_float.json");
    bad << R"({"mode":"fan","fan":{"rays":[{"id":"a","u":[0,0]}],)"
        << R"("triangles":[["a","a","a"]]},"omega":{"a":1.5},"F":{}})";
  }
  expect_eq(run_cli("check " + (tmp / "acceptance_float.json").string()), 1,
            "exit code 1 (float literal)");
  {
    std::ifstream in(fixture("hexagon.json"));
    std::stringstream buf;
    buf << in.rdbuf();
    std::string doc = buf.str();
    // Flip f to (1,1,1,1): the lift is open, require_closed stays set.
    auto pos = doc.find("\"u3\": -1");
    doc.replace(pos, 8, "\"u3\": 1");
    pos = doc.find("\"u4\": -1");
    doc.replace(pos, 8, "\"u4\": 1");
    std::ofstream out(tmp / "acceptance_open.json");
    out << doc;
  }
  expect_eq(run_cli("lift " + (tmp / "acceptance_open.json").string()), 2,
            "exit code 2 (require_closed unmet)");
}

}  // namespace

int main() {
  criterion(1, "hexagon golden test (positions, lambda, nu3, residual)", criterion1);
  criterion(2, "hexagon symbolic edge degrees on 25 random classes", criterion2);
  criterion(3, "M_{m,n} user-web golden test for (1,2,1), (2,3,1/6), (1,1,-1)",
            criterion3);
  criterion(4, "conifold Z/3 golden test at 10 random instantiations", criterion4);
  criterion(5, "three-way residual oracle on >= 100 random instances", criterion5);
  criterion(6, "invariant suite (holonomies, tension, symmetry, gauge, d_j)", criterion6);
  criterion(7, "validation suite (rejections and exit codes)", criterion7);
  return failures == 0 ? 0 : 1;
}
