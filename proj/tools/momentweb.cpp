// momentweb: validate height-1 fan triangulations and lift their moment
// webs to 3D multi-moment graphs. Verbs:
//   momentweb check INPUT.json
//   momentweb lift INPUT.json [--json P] [--svg P] [--lines3d P]
// Exit codes: 0 ok, 1 input error, 2 require_closed unmet, 3 internal
// consistency failure.

#include "momentweb/job.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

std::string resolve_output(const std::string& path) {
  const char* outdir = std::getenv("MOMENTWEB_OUTDIR");
  if (outdir && *outdir && std::filesystem::path(path).is_relative())
    return (std::filesystem::path(outdir) / path).string();
  return path;
}

void write_file(const std::string& path, const std::string& content) {
  std::string resolved = resolve_output(path);
  std::ofstream out(resolved, std::ios::binary);
  if (!out) throw mweb::input_error("cannot open output file \"" + resolved + "\"");
  out << content;
  if (!out) throw mweb::input_error("failed writing \"" + resolved + "\"");
}

void print_summary(const mweb::PipelineResult& result) {
  const mweb::LiftedWeb& L = result.lifted;
  std::cout << "mode: " << result.spec.mode << "\n"
            << "vertices: " << L.base.vertices.size() << ", edges: " << L.base.edges.size()
            << ", rays: " << L.base.rays.size() << "\n"
            << "kaehler: " << (result.kaehler ? "yes" : "no") << "\n"
            << "closed: " << (L.closed ? "yes" : "no") << "\n";
  for (const auto& r : L.residuals)
    std::cout << "residual " << r.key << ": " << mweb::to_string(r.value) << "\n";
  for (const auto& w : L.base.warnings) std::cout << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moment-web lifting engine"};
  app.require_subcommand(1);

  std::string input;
  std::string json_path, svg_path, lines3d_path;

  CLI::App* check = app.add_subcommand("check", "validate input and report the closure verdict");
  check->add_option("input", input, "input JSON document")->required();

  CLI::App* lift = app.add_subcommand("lift", "run the full pipeline and emit outputs");
  lift->add_option("input", input, "input JSON document")->required();
  lift->add_option("--json", json_path, "write the full JSON report here");
  lift->add_option("--svg", svg_path, "write an SVG diagram of the 2D web here");
  lift->add_option("--lines3d", lines3d_path, "write the 3D polyline file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    mweb::JobSpec spec = mweb::parse_input_file(input);
    mweb::PipelineResult result = mweb::run_pipeline(spec);
    print_summary(result);

    if (lift->parsed()) {
      if (!json_path.empty()) write_file(json_path, mweb::report_json(result).dump(2) + "\n");
      if (!svg_path.empty()) write_file(svg_path, mweb::report_svg(result));
      if (!lines3d_path.empty()) write_file(lines3d_path, mweb::report_lines3d(result));
    }

    if (spec.require_closed && !result.lifted.closed) {
      std::cerr << "error: require_closed is set but the lift is not closed\n";
      return 2;
    }
    return 0;
  } catch (const mweb::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const mweb::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
