#include "momentweb/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace mweb {

namespace {

using nlohmann::json;

// The whole document is scanned up front: a float anywhere is an error,
// even in a field that would otherwise be ignored.
void reject_floats(const json& j, const std::string& where) {
  if (j.is_number_float())
    throw input_error("floating point literal at " + where +
                      "; write an exact rational such as \"3/2\"");
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it)
      reject_floats(it.value(), where + "." + it.key());
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i)
      reject_floats(j[i], where + "[" + std::to_string(i) + "]");
}

Rat get_rat(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(where + ": " + e.what());
    }
  }
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rat(j.get<long long>());
  throw input_error(where + ": expected an integer or a rational string like \"3/2\"");
}

Int get_int(const json& j, const std::string& where) {
  Rat r = get_rat(j, where);
  if (denominator(r) != 1) throw input_error(where + ": expected an integer");
  return numerator(r);
}

Vec2 get_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw input_error(where + ": expected [x, y]");
  return {get_int(j[0], where + "[0]"), get_int(j[1], where + "[1]")};
}

RatVec2 get_rat_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw input_error(where + ": expected [x, y]");
  return {get_rat(j[0], where + "[0]"), get_rat(j[1], where + "[1]")};
}

std::map<std::string, Rat> get_coeffs(const json& j, const std::string& where) {
  if (!j.is_object()) throw input_error(where + ": expected an object of coefficients");
  std::map<std::string, Rat> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out[it.key()] = get_rat(it.value(), where + "." + it.key());
  return out;
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(where + ": missing required field \"" + key + "\"");
  return *it;
}

long long small(const Int& v, const char* what) {
  if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max())
    throw internal_error(std::string(what) + " out of 64-bit range in report");
  return v.convert_to<long long>();
}

json rat_pair(const RatVec2& v) { return json::array({to_string(v.x), to_string(v.y)}); }

json int_pair(const Vec2& v) {
  return json::array({small(v.x, "coordinate"), small(v.y, "coordinate")});
}

double approx(const Rat& r) {
  return numerator(r).convert_to<double>() / denominator(r).convert_to<double>();
}

}  // namespace

JobSpec parse_input(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("top-level document must be a JSON object");
  reject_floats(doc, "$");

  JobSpec spec;
  const json& mode = require(doc, "mode", "$");
  if (!mode.is_string() || (mode != "fan" && mode != "web"))
    throw input_error("$.mode: expected \"fan\" or \"web\"");
  spec.mode = mode.get<std::string>();

  if (spec.mode == "fan") {
    if (doc.contains("web"))
      throw input_error("mode is \"fan\" but a \"web\" payload is present");
    const json& fan = require(doc, "fan", "$");
    const json& rays = require(fan, "rays", "$.fan");
    if (!rays.is_array() || rays.empty())
      throw input_error("$.fan.rays: expected a non-empty array");
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::string where = "$.fan.rays[" + std::to_string(i) + "]";
      const json& id = require(rays[i], "id", where);
      if (!id.is_string()) throw input_error(where + ".id: expected a string");
      spec.rays.push_back(
          {id.get<std::string>(), get_vec2(require(rays[i], "u", where), where + ".u")});
    }
    const json& tris = require(fan, "triangles", "$.fan");
    if (!tris.is_array() || tris.empty())
      throw input_error("$.fan.triangles: expected a non-empty array");
    for (std::size_t i = 0; i < tris.size(); ++i) {
      std::string where = "$.fan.triangles[" + std::to_string(i) + "]";
      if (!tris[i].is_array() || tris[i].size() != 3)
        throw input_error(where + ": expected [id, id, id]");
      std::array<std::string, 3> t;
      for (int k = 0; k < 3; ++k) {
        if (!tris[i][k].is_string())
          throw input_error(where + "[" + std::to_string(k) + "]: expected a ray id");
        t[k] = tris[i][k].get<std::string>();
      }
      spec.triangles.push_back(t);
    }
    spec.omega = get_coeffs(require(doc, "omega", "$"), "$.omega");
    spec.F = get_coeffs(require(doc, "F", "$"), "$.F");
  } else {
    if (doc.contains("fan") || doc.contains("omega") || doc.contains("F"))
      throw input_error("mode is \"web\" but fan-mode payload fields are present");
    const json& web = require(doc, "web", "$");
    const json& vertices = require(web, "vertices", "$.web");
    if (!vertices.is_array() || vertices.empty())
      throw input_error("$.web.vertices: expected a non-empty array");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      std::string where = "$.web.vertices[" + std::to_string(i) + "]";
      const json& id = require(vertices[i], "id", where);
      if (!id.is_string()) throw input_error(where + ".id: expected a string");
      UserVertex v{id.get<std::string>(), std::nullopt};
      if (vertices[i].contains("mu"))
        v.mu = get_rat_vec2(vertices[i]["mu"], where + ".mu");
      spec.web_vertices.push_back(v);
    }
    if (web.contains("edges")) {
      const json& edges = web["edges"];
      if (!edges.is_array()) throw input_error("$.web.edges: expected an array");
      for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string where = "$.web.edges[" + std::to_string(i) + "]";
        const json& from = require(edges[i], "from", where);
        const json& to = require(edges[i], "to", where);
        if (!from.is_string() || !to.is_string())
          throw input_error(where + ": \"from\" and \"to\" must be vertex ids");
        spec.web_edges.push_back({from.get<std::string>(), to.get<std::string>(),
                                  get_vec2(require(edges[i], "r", where), where + ".r"),
                                  get_rat(require(edges[i], "t", where), where + ".t"),
                                  get_rat(require(edges[i], "s", where), where + ".s")});
      }
    }
    if (web.contains("rays")) {
      const json& rays = web["rays"];
      if (!rays.is_array()) throw input_error("$.web.rays: expected an array");
      for (std::size_t i = 0; i < rays.size(); ++i) {
        std::string where = "$.web.rays[" + std::to_string(i) + "]";
        const json& at = require(rays[i], "at", where);
        if (!at.is_string()) throw input_error(where + ".at: expected a vertex id");
        spec.web_rays.push_back({at.get<std::string>(),
                                 get_vec2(require(rays[i], "r", where), where + ".r"),
                                 get_vec2(require(rays[i], "dir", where), where + ".dir")});
      }
    }
  }

  if (doc.contains("basepoint")) {
    const json& bp = doc["basepoint"];
    if (!bp.is_object()) throw input_error("$.basepoint: expected an object");
    if (spec.mode == "fan") {
      if (bp.contains("triangle"))
        spec.basepoint_triangle =
            static_cast<int>(small(get_int(bp["triangle"], "$.basepoint.triangle"),
                                   "basepoint triangle"));
      if (bp.contains("vertex"))
        throw input_error("$.basepoint.vertex applies to web mode only");
    } else {
      if (bp.contains("vertex")) {
        if (!bp["vertex"].is_string())
          throw input_error("$.basepoint.vertex: expected a vertex id");
        spec.basepoint_vertex = bp["vertex"].get<std::string>();
      }
      if (bp.contains("triangle"))
        throw input_error("$.basepoint.triangle applies to fan mode only");
    }
    if (bp.contains("mu")) spec.basepoint_mu = get_rat_vec2(bp["mu"], "$.basepoint.mu");
    if (bp.contains("lambda"))
      spec.basepoint_lambda = get_rat_vec2(bp["lambda"], "$.basepoint.lambda");
    if (bp.contains("nu3")) spec.basepoint_nu3 = get_rat(bp["nu3"], "$.basepoint.nu3");
  }

  if (doc.contains("flags")) {
    const json& flags = doc["flags"];
    if (!flags.is_object()) throw input_error("$.flags: expected an object");
    if (flags.contains("allow_non_kaehler")) {
      if (!flags["allow_non_kaehler"].is_boolean())
        throw input_error("$.flags.allow_non_kaehler: expected a boolean");
      spec.allow_non_kaehler = flags["allow_non_kaehler"].get<bool>();
    }
    if (flags.contains("require_closed")) {
      if (!flags["require_closed"].is_boolean())
        throw input_error("$.flags.require_closed: expected a boolean");
      spec.require_closed = flags["require_closed"].get<bool>();
    }
  }
  return spec;
}

JobSpec parse_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

nlohmann::json jobspec_to_json(const JobSpec& spec) {
  json doc;
  doc["mode"] = spec.mode;
  if (spec.mode == "fan") {
    json rays = json::array();
    for (const auto& r : spec.rays)
      rays.push_back({{"id", r.id}, {"u", int_pair(r.u)}});
    json tris = json::array();
    for (const auto& t : spec.triangles) tris.push_back({t[0], t[1], t[2]});
    doc["fan"] = {{"rays", rays}, {"triangles", tris}};
    json omega = json::object(), F = json::object();
    for (const auto& [id, v] : spec.omega) omega[id] = to_string(v);
    for (const auto& [id, v] : spec.F) F[id] = to_string(v);
    doc["omega"] = omega;
    doc["F"] = F;
    doc["basepoint"]["triangle"] = spec.basepoint_triangle;
  } else {
    json vertices = json::array(), edges = json::array(), rays = json::array();
    for (const auto& v : spec.web_vertices) {
      json jv = {{"id", v.id}};
      if (v.mu) jv["mu"] = rat_pair(*v.mu);
      vertices.push_back(jv);
    }
    for (const auto& e : spec.web_edges)
      edges.push_back({{"from", e.from},
                       {"to", e.to},
                       {"r", int_pair(e.r)},
                       {"t", to_string(e.t)},
                       {"s", to_string(e.s)}});
    for (const auto& r : spec.web_rays)
      rays.push_back({{"at", r.at}, {"r", int_pair(r.r)}, {"dir", int_pair(r.dir2)}});
    doc["web"] = {{"vertices", vertices}, {"edges", edges}, {"rays", rays}};
    if (spec.basepoint_vertex) doc["basepoint"]["vertex"] = *spec.basepoint_vertex;
  }
  doc["basepoint"]["mu"] = rat_pair(spec.basepoint_mu);
  doc["basepoint"]["lambda"] = rat_pair(spec.basepoint_lambda);
  doc["basepoint"]["nu3"] = to_string(spec.basepoint_nu3);
  doc["flags"] = {{"allow_non_kaehler", spec.allow_non_kaehler},
                  {"require_closed", spec.require_closed}};
  return doc;
}

PipelineResult run_pipeline(const JobSpec& spec) {
  PipelineResult result;
  result.spec = spec;
  if (spec.mode == "fan") {
    result.fan = validate_fan(spec.rays, spec.triangles);
    result.omega = CohClass(*result.fan, spec.omega);
    result.F = CohClass(*result.fan, spec.F);
    result.kaehler = kaehler_cone_check(*result.fan, *result.omega).ok;
    MomentWeb web = build_moment_web(*result.fan, *result.omega, spec.basepoint_triangle,
                                     spec.basepoint_mu, spec.allow_non_kaehler);
    result.lifted = build_lift(*result.fan, web, *result.F, spec.basepoint_lambda,
                               spec.basepoint_nu3);
    closure_report(result.lifted, &*result.fan, &*result.omega, &*result.F);
  } else {
    std::string basepoint =
        spec.basepoint_vertex.value_or(spec.web_vertices.empty()
                                           ? std::string()
                                           : spec.web_vertices.front().id);
    MomentWeb web = ingest_user_web(spec.web_vertices, spec.web_edges, spec.web_rays,
                                    basepoint, spec.basepoint_mu, spec.allow_non_kaehler);
    result.kaehler = std::all_of(web.edges.begin(), web.edges.end(),
                                 [](const WebEdge& e) { return e.t > 0; });
    result.lifted = build_lift(web, spec.basepoint_lambda, spec.basepoint_nu3);
    closure_report(result.lifted, nullptr, nullptr, nullptr);
  }
  return result;
}

nlohmann::json report_json(const PipelineResult& result) {
  const LiftedWeb& L = result.lifted;
  json doc;
  doc["mode"] = result.spec.mode;
  doc["closed"] = L.closed;
  doc["kaehler"] = result.kaehler;

  json vertices = json::array();
  for (std::size_t v = 0; v < L.base.vertices.size(); ++v)
    vertices.push_back({{"id", L.base.vertices[v].id},
                        {"mu", rat_pair(L.base.vertices[v].mu)},
                        {"lambda", rat_pair(L.lambda[v])},
                        {"nu3", to_string(L.nu3[v])}});
  doc["vertices"] = vertices;

  json edges = json::array();
  for (const auto& e : L.base.edges)
    edges.push_back({{"from", L.base.vertices[e.from].id},
                     {"to", L.base.vertices[e.to].id},
                     {"r", int_pair(e.r)},
                     {"t", to_string(e.t)},
                     {"s", e.s ? to_string(*e.s) : "0"}});
  doc["edges"] = edges;

  json rays = json::array();
  for (std::size_t i = 0; i < L.base.rays.size(); ++i) {
    const Vec3& d = L.rays3d[i];
    rays.push_back({{"at", L.base.vertices[L.base.rays[i].at].id},
                    {"dir2", int_pair(L.base.rays[i].dir2)},
                    {"dir3", json::array({small(d.x, "direction"), small(d.y, "direction"),
                                          small(d.z, "direction")})}});
  }
  doc["rays"] = rays;

  json residuals = json::array();
  for (const auto& r : L.residuals)
    residuals.push_back({{"key", r.key}, {"value", to_string(r.value)}});
  doc["residuals"] = residuals;

  doc["warnings"] = L.base.warnings;
  return doc;
}

std::string report_lines3d(const PipelineResult& result) {
  const LiftedWeb& L = result.lifted;
  std::ostringstream out;
  for (const auto& e : L.base.edges) {
    const RatVec2& a = L.base.vertices[e.from].mu;
    const RatVec2& b = L.base.vertices[e.to].mu;
    out << "edge " << to_string(a.x) << ' ' << to_string(a.y) << ' '
        << to_string(L.nu3[e.from]) << ' ' << to_string(b.x) << ' ' << to_string(b.y)
        << ' ' << to_string(L.nu3[e.to]) << '\n';
  }
  for (std::size_t i = 0; i < L.base.rays.size(); ++i) {
    const RatVec2& p = L.base.vertices[L.base.rays[i].at].mu;
    const Vec3& d = L.rays3d[i];
    out << "ray " << to_string(p.x) << ' ' << to_string(p.y) << ' '
        << to_string(L.nu3[L.base.rays[i].at]) << ' ' << d.x << ' ' << d.y << ' ' << d.z
        << '\n';
  }
  return out.str();
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid the distinct bit pattern of negative zero leaking into output.
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

}  // namespace

std::string report_svg(const PipelineResult& result) {
  const LiftedWeb& L = result.lifted;
  const double W = 640, H = 640, margin = 70, ray_len = 42;

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& v : L.base.vertices) {
    double x = approx(v.mu.x), y = approx(v.mu.y);
    if (first) {
      min_x = max_x = x;
      min_y = max_y = y;
      first = false;
    } else {
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  double scale = (W - 2 * margin) / span;
  double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
  auto sx = [&](double x) { return W / 2 + (x - cx) * scale; };
  auto sy = [&](double y) { return H / 2 - (y - cy) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
         "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#444\"/>"
         "</marker></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& e : L.base.edges) {
    const RatVec2& a = L.base.vertices[e.from].mu;
    const RatVec2& b = L.base.vertices[e.to].mu;
    out << "<line x1=\"" << fmt(sx(approx(a.x))) << "\" y1=\"" << fmt(sy(approx(a.y)))
        << "\" x2=\"" << fmt(sx(approx(b.x))) << "\" y2=\"" << fmt(sy(approx(b.y)))
        << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
  }

  for (const auto& ray : L.base.rays) {
    const RatVec2& p = L.base.vertices[ray.at].mu;
    double dx = ray.dir2.x.convert_to<double>(), dy = ray.dir2.y.convert_to<double>();
    double norm = std::sqrt(dx * dx + dy * dy);
    double x0 = sx(approx(p.x)), y0 = sy(approx(p.y));
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\""
        << fmt(x0 + ray_len * dx / norm) << "\" y2=\"" << fmt(y0 - ray_len * dy / norm)
        << "\" stroke=\"#444\" stroke-width=\"2\" marker-end=\"url(#arrow)\"/>\n";
  }

  for (std::size_t v = 0; v < L.base.vertices.size(); ++v) {
    double x = sx(approx(L.base.vertices[v].mu.x));
    double y = sy(approx(L.base.vertices[v].mu.y));
    out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
        << "\" r=\"4\" fill=\"#0a58ca\"/>\n"
        << "<text x=\"" << fmt(x + 7) << "\" y=\"" << fmt(y - 7)
        << "\" font-size=\"12\" font-family=\"monospace\">" << L.base.vertices[v].id
        << " nu3=" << to_string(L.nu3[v]) << "</text>\n";
  }

  // Residual annotations: at the centroid of the star's web vertices in
  // fan mode, at the midpoint of the closing edge otherwise.
  for (const auto& r : L.residuals) {
    double ax = 0, ay = 0;
    if (result.fan) {
      int e_ray = result.fan->ray_index(r.key);
      int count = 0;
      for (std::size_t t = 0; t < result.fan->triangles().size(); ++t) {
        const auto& tv = result.fan->triangles()[t].v;
        if (std::find(tv.begin(), tv.end(), e_ray) != tv.end()) {
          ax += sx(approx(L.base.vertices[t].mu.x));
          ay += sy(approx(L.base.vertices[t].mu.y));
          ++count;
        }
      }
      ax /= count;
      ay /= count;
    } else {
      int ei = std::stoi(r.key.substr(r.key.find(':') + 1));
      const RatVec2& a = L.base.vertices[L.base.edges[ei].from].mu;
      const RatVec2& b = L.base.vertices[L.base.edges[ei].to].mu;
      ax = (sx(approx(a.x)) + sx(approx(b.x))) / 2;
      ay = (sy(approx(a.y)) + sy(approx(b.y))) / 2;
    }
    out << "<text x=\"" << fmt(ax) << "\" y=\"" << fmt(ay)
        << "\" font-size=\"12\" font-family=\"monospace\" fill=\"#b02a37\" "
           "text-anchor=\"middle\">res(" << r.key << ")=" << to_string(r.value)
        << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace mweb
