#pragma once

// Input parsing, pipeline composition and report emission for the CLI.

#include "momentweb/lift.hpp"

#include <json.hpp>

#include <optional>

namespace mweb {

struct JobSpec {
  std::string mode;  // "fan" | "web"

  // fan payload
  std::vector<Ray> rays;
  std::vector<std::array<std::string, 3>> triangles;
  std::map<std::string, Rat> omega;
  std::map<std::string, Rat> F;

  // web payload
  std::vector<UserVertex> web_vertices;
  std::vector<UserEdge> web_edges;
  std::vector<UserRay> web_rays;

  // basepoint overrides
  int basepoint_triangle = 0;
  std::optional<std::string> basepoint_vertex;
  RatVec2 basepoint_mu{};
  RatVec2 basepoint_lambda{};
  Rat basepoint_nu3 = 0;

  bool allow_non_kaehler = false;
  bool require_closed = false;
};

// Strict: rationals are strings like "3/2" or JSON integers; any
// floating point literal is rejected.
JobSpec parse_input(const std::string& text);
JobSpec parse_input_file(const std::string& path);

// Canonical re-serialization, for round-trip checks.
nlohmann::json jobspec_to_json(const JobSpec& spec);

struct PipelineResult {
  JobSpec spec;
  std::optional<FanTriangulation> fan;  // fan mode only
  std::optional<CohClass> omega, F;     // fan mode only
  LiftedWeb lifted;
  bool kaehler = true;
};

PipelineResult run_pipeline(const JobSpec& spec);

nlohmann::json report_json(const PipelineResult& result);
std::string report_svg(const PipelineResult& result);
std::string report_lines3d(const PipelineResult& result);

}  // namespace mweb
