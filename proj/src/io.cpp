#include "stitlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "stitlab/error.hpp"

namespace stitlab {

using nlohmann::json;

namespace {

json point(const Vec& x, int dim) {
  json p = json::array();
  for (int k = 0; k < dim; ++k) p.push_back(x[k]);
  return p;
}

json points(std::span<const Vec> xs, int dim) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(point(x, dim));
  return out;
}

Vec read_point(const json& p, int dim, const std::string& where) {
  if (!p.is_array() || static_cast<int>(p.size()) != dim)
    throw Error(Errc::Config, where + ": expected " + std::to_string(dim) + " coordinates");
  Vec x = Vec::Zero();
  for (int k = 0; k < dim; ++k) {
    if (!p[k].is_number()) throw Error(Errc::Config, where + ": coordinates must be numbers");
    x[k] = p[k].get<double>();
  }
  return x;
}

json window_json(const ConvexPolytope& w) {
  json out{{"dim", w.dim()}, {"vertices", points(w.vertices(), w.dim())}};
  if (w.dim() == 3) out["facets"] = w.facets();
  return out;
}

ConvexPolytope window_from_json(const json& w) {
  if (!w.is_object()) throw Error(Errc::Config, "window: expected an object");
  const int dim = w.value("dim", 0);
  if (dim != 2 && dim != 3) throw Error(Errc::Config, "window.dim: must be 2 or 3");
  if (!w.contains("vertices") || !w["vertices"].is_array())
    throw Error(Errc::Config, "window.vertices: expected an array");
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < w["vertices"].size(); ++i)
    vs.push_back(read_point(w["vertices"][i], dim, "window.vertices[" + std::to_string(i) + "]"));
  if (dim == 2) return ConvexPolytope::polygon(std::move(vs));
  if (!w.contains("facets")) throw Error(Errc::Config, "window.facets: required in dimension 3");
  return ConvexPolytope::polyhedron(std::move(vs), w["facets"].get<std::vector<std::vector<int>>>());
}

json report_json(const TestReport& r) {
  json out{{"name", r.name},
           {"statistic_name", r.statistic_name},
           {"statistic", r.statistic},
           {"p_value", r.p_value ? json(*r.p_value) : json(nullptr)},
           {"interval", r.interval ? json::array({r.interval->first, r.interval->second}) : json(nullptr)},
           {"sample_sizes", r.sample_sizes},
           {"seeds", r.seeds},
           {"threshold", r.threshold},
           {"pass", r.pass},
           {"detail", r.detail}};
  return out;
}

std::string fmt_g(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

std::string tessellation_to_json(const TessellationState& state, std::string_view config_hash) {
  const int dim = state.dim();
  json doc;
  doc["format"] = kTessFormat;
  if (!config_hash.empty()) doc["config_hash"] = config_hash;
  doc["time"] = state.time;
  doc["window"] = window_json(state.window);

  json cells = json::array();
  for (const auto& c : state.cells)
    cells.push_back({{"id", c.id}, {"vertices", points(c.polytope.vertices(), dim)}, {"birth_time", c.birth_time}});
  doc["cells"] = std::move(cells);

  json faces = json::array();
  for (const auto& rec : state.ledger) {
    json iv = json::array();
    for (const auto& v : rec.internal_vertices) iv.push_back({{"point", point(v.point, dim)}, {"time", v.time}});
    faces.push_back({{"id", rec.id},
                     {"vertices", points(rec.face.vertices, dim)},
                     {"birth_time", rec.birth_time},
                     {"internal_vertices", std::move(iv)}});
  }
  doc["maximal_faces"] = std::move(faces);

  json events = json::array();
  for (const auto& e : state.events) {
    events.push_back({{"time", e.time},
                      {"cell", e.cell_id},
                      {"normal", point(e.hyperplane.normal, dim)},
                      {"offset", e.hyperplane.offset},
                      {"plus", e.plus_id},
                      {"minus", e.minus_id},
                      {"face", e.face_id}});
  }
  doc["events"] = std::move(events);
  return doc.dump() + "\n";
}

TessellationState tessellation_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Config, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", std::string()) != kTessFormat)
    throw Error(Errc::Config, "format: expected \"" + std::string(kTessFormat) + "\"");
  if (!doc.contains("window")) throw Error(Errc::Config, "window: missing");
  const ConvexPolytope window = window_from_json(doc["window"]);
  const int dim = window.dim();
  if (!doc.contains("events") || !doc["events"].is_array()) throw Error(Errc::Config, "events: expected an array");

  std::vector<SplitEvent> events;
  const auto& arr = doc["events"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "events[" + std::to_string(i) + "]";
    const auto& e = arr[i];
    try {
      SplitEvent ev;
      ev.time = e.at("time").get<double>();
      ev.cell_id = e.at("cell").get<CellId>();
      const Vec n = read_point(e.at("normal"), dim, where + ".normal");
      if (std::abs(n.norm() - 1.0) > 1e-9) throw Error(Errc::Config, where + ".normal: expected a unit vector");
      ev.hyperplane = Hyperplane{n, e.at("offset").get<double>(), dim};
      ev.plus_id = e.at("plus").get<CellId>();
      ev.minus_id = e.at("minus").get<CellId>();
      ev.face_id = e.value("face", static_cast<FaceId>(i));
      events.push_back(ev);
    } catch (const json::exception& ex) {
      throw Error(Errc::Config, where + ": " + ex.what());
    }
  }
  double time = doc.value("time", events.empty() ? 0.0 : events.back().time);
  return replay(window, events, time);
}

std::string tessellation_to_svg(const TessellationState& state, double width_px) {
  if (state.dim() != 2) throw Error(Errc::BadDimension, "SVG export needs a planar state");
  Vec lo = state.window.vertices()[0], hi = lo;
  for (const auto& v : state.window.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double scale = width_px / std::max(hi.x() - lo.x(), 1e-300);
  const double height_px = scale * (hi.y() - lo.y());
  const double t = state.time > 0.0 ? state.time : 1.0;
  auto X = [&](const Vec& v) { return fmt_g((v.x() - lo.x()) * scale, 8); };
  auto Y = [&](const Vec& v) { return fmt_g((hi.y() - v.y()) * scale, 8); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_g(width_px) << "\" height=\""
      << fmt_g(height_px) << "\" viewBox=\"0 0 " << fmt_g(width_px) << ' ' << fmt_g(height_px) << "\">\n";
  out << "<polygon fill=\"white\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (const auto& v : state.window.vertices()) out << X(v) << ',' << Y(v) << ' ';
  out << "\"/>\n";
  for (const auto& rec : state.ledger) {
    // first cuts are the darkest
    const double opacity = std::clamp(1.0 - 0.8 * rec.birth_time / t, 0.2, 1.0);
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-opacity=\"" << fmt_g(opacity, 3)
        << "\" points=\"";
    for (const auto& v : rec.face.vertices) out << X(v) << ',' << Y(v) << ' ';
    out << "\"><title>face " << rec.id << ", born " << fmt_g(rec.birth_time) << "</title></polyline>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_palm_header(std::ostream& out, int d) {
  for (int k = 1; k < d; ++k) out << 's' << k << ',';
  out << "L,N\n";
}

void write_palm_rows(std::ostream& out, std::span<const PalmSegmentSample> samples) {
  char buf[40];
  std::string line;
  for (const auto& s : samples) {
    line.clear();
    for (double b : s.birth_times) {
      std::snprintf(buf, sizeof buf, "%.17g,", b);
      line += buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%" PRIu64 "\n", s.length, s.internal_vertices);
    line += buf;
    out << line;
  }
}

std::string p1j_csv(unsigned n_lo, unsigned n_hi, const DistributionSpec& spec) {
  std::string out = "n,p,error\n";
  char buf[96];
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    const auto e = p1j(n, spec);
    std::snprintf(buf, sizeof buf, "%u,%.15g,%.3g\n", n, e.value, e.error);
    out += buf;
  }
  return out;
}

std::string report_to_json(const AcceptanceReport& report, std::string_view timestamp) {
  json doc;
  doc["format"] = kReportFormat;
  doc["config_hash"] = report.config_hash;
  doc["master_seed"] = report.master_seed;
  doc["pass"] = report.pass();
  json criteria = json::array();
  json runtimes = json::object();
  for (const auto& c : report.criteria) {
    json checks = json::array();
    for (const auto& r : c.checks) checks.push_back(report_json(r));
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"pass", c.pass},
                        {"time_budget_seconds", c.time_budget},
                        {"checks", std::move(checks)}});
    runtimes[std::to_string(c.id)] = c.seconds;
  }
  doc["criteria"] = std::move(criteria);
  doc["metadata"] = {{"runtime_seconds", std::move(runtimes)}, {"timestamp", timestamp}};
  return doc.dump(2) + "\n";
}

std::string report_to_markdown(const AcceptanceReport& report) {
  std::ostringstream out;
  out << "# Acceptance report\n\nmaster seed " << report.master_seed << ", config " << report.config_hash << "\n\n";
  out << "| # | criterion | result | runtime (s) | budget (s) |\n|---|---|---|---|---|\n";
  for (const auto& c : report.criteria)
    out << "| " << c.id << " | " << c.title << " | " << (c.pass ? "PASS" : "FAIL") << " | "
        << fmt_g(c.seconds, 3) << " | " << fmt_g(c.time_budget) << " |\n";
  out << "\n| criterion | check | statistic | p-value / interval | result |\n|---|---|---|---|---|\n";
  for (const auto& c : report.criteria) {
    for (const auto& r : c.checks) {
      std::string pv = "";
      if (r.p_value) pv = fmt_g(*r.p_value, 4);
      else if (r.interval) pv = "[" + fmt_g(r.interval->first, 5) + ", " + fmt_g(r.interval->second, 5) + "]";
      std::string name = r.name;
      std::replace(name.begin(), name.end(), '|', '/');
      out << "| " << c.id << " | " << name << " | " << r.statistic_name << " = " << fmt_g(r.statistic) << " | "
          << pv << " | " << (r.pass ? "ok" : "**failed**") << " |\n";
    }
  }
  out << "\nOverall: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot open " + path + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(Errc::InvalidArgument, "failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Config, path + ": cannot open");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace stitlab
