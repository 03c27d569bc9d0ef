#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "stitlab/analytics.hpp"
#include "stitlab/config.hpp"
#include "stitlab/error.hpp"
#include "stitlab/experiments.hpp"
#include "stitlab/io.hpp"
#include "stitlab/mecke.hpp"
#include "stitlab/palm_sampler.hpp"
#include "stitlab/parallel.hpp"
#include "stitlab/random.hpp"
#include "stitlab/stit_engine.hpp"

using namespace stitlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitAcceptance = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Config:
    case Errc::InvalidArgument:
    case Errc::BadDimension:
    case Errc::InvalidWindow:
    case Errc::BadInnerWindow:
    case Errc::NonPositiveFactor:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// "3" or "0..10"
std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const unsigned n = static_cast<unsigned>(std::stoul(s));
      return {n, n};
    }
    const unsigned lo = static_cast<unsigned>(std::stoul(s.substr(0, dots)));
    const unsigned hi = static_cast<unsigned>(std::stoul(s.substr(dots + 2)));
    if (hi < lo) throw UsageError("--n: empty range " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--n: expected N or LO..HI, got " + s);
  }
}

void check_dj(int d, int j) {
  if (d < 2 || j < 0 || j > 1) throw UsageError("--d must be >= 2 and --j must be 0 or 1");
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw Error(Errc::InvalidArgument, "cannot open " + path + " for writing");
    stream = &file;
  }
  std::ostream& operator*() { return *stream; }
};

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  int dim = 2;
  double side = 20.0;
  double horizon = 1.0;
  std::string measure = "isotropic";
  std::uint64_t seed = 0;
  std::string output;
  std::string svg;
};

int run_simulate(const SimulateArgs& a) {
  SimulateConfig cfg;
  if (!a.config.empty()) {
    cfg = load_simulate_config(a.config);
  } else {
    if (a.dim != 2 && a.dim != 3) throw UsageError("--dim must be 2 or 3");
    cfg.dim = a.dim;
    cfg.hi = Vec(a.side, a.side, a.dim == 3 ? a.side : 0.0);
    cfg.horizon = a.horizon;
    cfg.measure = parse_measure_name(a.measure);
    cfg.seed = a.seed;
    cfg.output = a.output;
    cfg.svg = a.svg;
    std::ostringstream canon;
    canon << "dim=" << cfg.dim << ";side=" << a.side << ";horizon=" << cfg.horizon << ";measure=" << cfg.measure.type
          << ";seed=" << cfg.seed;
    cfg.config_hash = config_hash(canon.str());
  }
  if (!a.output.empty()) cfg.output = a.output;
  if (!a.svg.empty()) cfg.svg = a.svg;

  const auto measure = cfg.measure.build(cfg.dim);
  Rng rng = make_stream(cfg.seed, "simulate", 0);
  EngineOptions opts;
  opts.max_cells = cfg.max_cells;
  const auto state = run_local_stit(cfg.window(), measure, cfg.horizon, rng, opts);

  const std::string doc = tessellation_to_json(state, cfg.config_hash);
  if (cfg.output.empty()) {
    std::cout << doc;
  } else {
    write_text_file(cfg.output, doc);
  }
  if (!cfg.svg.empty()) write_text_file(cfg.svg, tessellation_to_svg(state));
  std::cerr << "cells " << state.cells.size() << ", maximal faces " << state.ledger.size() << ", time "
            << state.time << "\n";
  return kExitOk;
}

// --- palm -----------------------------------------------------------------

struct PalmArgs {
  int d = 2;
  int j = 0;
  double t = 1.0;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_palm(const PalmArgs& a, unsigned threads) {
  check_dj(a.d, a.j);
  if (!(a.t > 0.0)) throw UsageError("--t must be positive");
  const std::size_t chunks = (a.samples + kPalmChunk - 1) / kPalmChunk;
  const std::size_t block = std::max<std::size_t>(1, 4 * threads);

  Output out(a.out);
  write_palm_header(*out, a.d);
  for (std::size_t c0 = 0; c0 < chunks; c0 += block) {
    const std::size_t n = std::min(block * kPalmChunk, a.samples - c0 * kPalmChunk);
    write_palm_rows(*out, sample_palm_batch(a.d, a.j, a.t, n, a.seed, threads, c0));
  }
  if (!*out) throw Error(Errc::InvalidArgument, "write failed");
  return kExitOk;
}

// --- analytic -------------------------------------------------------------

struct AnalyticArgs {
  int d = 3;
  int j = 1;
  double t = 1.0;
  std::string n = "0..10";
  unsigned n_head = 60;
};

int run_p1j(const AnalyticArgs& a) {
  check_dj(a.d, a.j);
  const auto [lo, hi] = parse_range(a.n);
  DistributionSpec spec{a.d, a.j, a.t};
  std::cout << p1j_csv(lo, hi, spec);
  return kExitOk;
}

int run_mean(const AnalyticArgs& a) {
  check_dj(a.d, a.j);
  const double closed = mean_internal_vertices(a.d, a.j);
  std::printf("d,j,closed_form,table_sum,error\n");
  if (std::isinf(closed)) {
    std::printf("%d,%d,inf,,\n", a.d, a.j);
    return kExitOk;
  }
  const auto m = mean_from_table(DistributionSpec{a.d, a.j, a.t}, a.n_head);
  std::printf("%d,%d,%.15g,%.15g,%.3g\n", a.d, a.j, closed, m.total, m.error);
  return kExitOk;
}

// --- mecke ----------------------------------------------------------------

struct MeckeArgs {
  std::string variant = "simple";
  std::string measure = "axis-parallel";
  double side = 20.0;
  double margin = 5.0;
  double horizon = 1.0;
  std::size_t replications = 200;
  std::size_t grid = 41;
  std::size_t inner_mc = 1;
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

int run_mecke(const MeckeArgs& a, unsigned threads) {
  if (!(a.side > 2.0 * a.margin) || a.margin < 0.0) throw UsageError("need 0 <= --margin < --side / 2");
  const auto w = ConvexPolytope::box(Vec(0, 0, 0), Vec(a.side, a.side, 0), 2);
  const auto inner = inner_box(w, a.margin);
  const auto measure = parse_measure_name(a.measure).build(2);
  MeckeFunctional g;
  if (a.variant == "simple") {
    // phi(s) = s, psi(v) = v, centers in the left half of the inner window
    const auto half = ConvexPolytope::box(Vec(a.margin, a.margin, 0), Vec(0.5 * a.side, a.side - a.margin, 0), 2);
    g = MeckeFunctional::simple(a.horizon, inner, [](double s) { return s; }, [](double v) { return v; }, half);
  } else if (a.variant == "nested") {
    g = MeckeFunctional::nested(a.horizon, inner, a.count);
  } else {
    throw UsageError("--variant must be simple or nested");
  }
  MeckeOptions o;
  o.replications = a.replications;
  o.seed = a.seed;
  o.threads = threads;
  o.s_grid = uniform_grid(a.horizon, a.grid);
  o.inner_mc = a.inner_mc;
  const auto l = mecke_lhs(g, w, measure, o);
  const auto r = mecke_rhs(g, w, measure, o);
  std::printf("side,mean,half_width,n\n");
  std::printf("lhs,%.10g,%.6g,%zu\n", l.mean, l.half_width, l.n);
  std::printf("rhs,%.10g,%.6g,%zu\n", r.mean, r.half_width, r.n);
  std::fprintf(stderr, "95%% intervals %s\n", intervals_overlap(l, r) ? "overlap" : "do not overlap");
  return kExitOk;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string config;
  std::string json = "acceptance_report.json";
  std::string markdown = "acceptance_report.md";
  std::vector<int> only;
};

int run_verify(const VerifyArgs& a, unsigned threads, bool threads_given) {
  std::string hash;
  AcceptanceConfig cfg = load_acceptance_config(a.config, &hash);
  if (threads_given) cfg.threads = threads;
  if (!a.only.empty()) cfg.only = a.only;
  for (int id : cfg.only)
    if (id < 1 || id > kCriterionCount) throw UsageError("--only: criteria are numbered 1.." + std::to_string(kCriterionCount));
  auto report = run_acceptance(cfg, [](const CriterionResult& c) {
    std::cerr << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << " ("
              << c.seconds << " s)\n";
    for (const auto& r : c.checks)
      if (!r.pass) std::cerr << "    failed: " << r.name << " " << r.detail << "\n";
  });
  report.config_hash = hash;
  if (!a.json.empty()) write_text_file(a.json, report_to_json(report, utc_now()));
  if (!a.markdown.empty()) write_text_file(a.markdown, report_to_markdown(report));
  std::cout << (report.pass() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return report.pass() ? kExitOk : kExitAcceptance;
}

// --- export-svg -----------------------------------------------------------

int run_export_svg(const std::string& input, const std::string& output, double width) {
  const auto state = tessellation_from_json(read_text_file(input));
  const auto svg = tessellation_to_svg(state, width);
  if (output.empty() || output == "-") {
    std::cout << svg;
  } else {
    write_text_file(output, svg);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification of STIT tessellations"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads_flag = 0;
  auto* threads_opt =
      app.add_option("--threads", threads_flag, "Worker threads (default: STITLAB_THREADS, then all cores)");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run the local STIT process in a box window");
  c_sim->add_option("--config", sim.config, "TOML file with window, horizon, measure and seed")->check(CLI::ExistingFile);
  c_sim->add_option("--dim", sim.dim, "Dimension (2 or 3)");
  c_sim->add_option("--side", sim.side, "Window side length");
  c_sim->add_option("--t,--horizon", sim.horizon, "Time horizon");
  c_sim->add_option("--measure", sim.measure, "isotropic or axis-parallel");
  c_sim->add_option("--seed", sim.seed, "Master seed");
  c_sim->add_option("-o,--output", sim.output, "stit-tess/1 JSON output (default stdout)");
  c_sim->add_option("--svg", sim.svg, "Also write an SVG drawing (d=2)");

  PalmArgs palm;
  auto* c_palm = app.add_subcommand("palm", "Sample typical maximal segments");
  c_palm->add_option("--d", palm.d, "Dimension")->required();
  c_palm->add_option("--j", palm.j, "Weight index, 0 or 1")->required();
  c_palm->add_option("--t", palm.t, "Time");
  c_palm->add_option("--samples", palm.samples, "Number of samples");
  c_palm->add_option("--seed", palm.seed, "Master seed");
  c_palm->add_option("-o,--out", palm.out, "CSV output (default stdout)");

  AnalyticArgs an;
  auto* c_an = app.add_subcommand("analytic", "Internal-vertex laws");
  c_an->require_subcommand(1);
  auto* c_p1j = c_an->add_subcommand("p1j", "Probabilities of n internal vertices, as CSV");
  c_p1j->add_option("--d", an.d, "Dimension")->required();
  c_p1j->add_option("--j", an.j, "Weight index, 0 or 1")->required();
  c_p1j->add_option("--n", an.n, "N or LO..HI");
  c_p1j->add_option("--t", an.t, "Time (the law does not depend on it)");
  auto* c_mean = c_an->add_subcommand("mean", "Mean number of internal vertices");
  c_mean->add_option("--d", an.d, "Dimension")->required();
  c_mean->add_option("--j", an.j, "Weight index, 0 or 1")->required();
  c_mean->add_option("--n-head", an.n_head, "Table terms before the closed-form tail");

  MeckeArgs mk;
  auto* c_mk = app.add_subcommand("mecke", "Estimate both sides of the Mecke-type formula");
  c_mk->add_option("--variant", mk.variant, "simple or nested");
  c_mk->add_option("--measure", mk.measure, "isotropic or axis-parallel");
  c_mk->add_option("--side", mk.side, "Window side length");
  c_mk->add_option("--margin", mk.margin, "Inner window margin");
  c_mk->add_option("--horizon", mk.horizon, "Time horizon");
  c_mk->add_option("--replications", mk.replications, "Replications per side");
  c_mk->add_option("--grid", mk.grid, "Time grid nodes for the integral side");
  c_mk->add_option("--inner-mc", mk.inner_mc, "Hyperplane draws per cell and node");
  c_mk->add_option("--count", mk.count, "Internal-vertex count for the nested variant");
  c_mk->add_option("--seed", mk.seed, "Master seed");

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "Run the acceptance suite");
  c_vf->add_option("--config", vf.config, "Acceptance TOML")->required()->check(CLI::ExistingFile);
  c_vf->add_option("--json", vf.json, "JSON report path");
  c_vf->add_option("--markdown", vf.markdown, "Markdown summary path");
  c_vf->add_option("--only", vf.only, "Run only these criteria");

  std::string svg_in, svg_out;
  double svg_width = 640.0;
  auto* c_svg = app.add_subcommand("export-svg", "Draw a planar stit-tess/1 file");
  c_svg->add_option("input", svg_in, "stit-tess/1 JSON")->required()->check(CLI::ExistingFile);
  c_svg->add_option("-o,--output", svg_out, "SVG output (default stdout)");
  c_svg->add_option("--width", svg_width, "Width in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const bool threads_given = threads_opt->count() > 0;
    const unsigned threads = resolve_threads(threads_given ? threads_flag : 0);
    if (*c_sim) return run_simulate(sim);
    if (*c_palm) return run_palm(palm, threads);
    if (*c_p1j) return run_p1j(an);
    if (*c_mean) return run_mean(an);
    if (*c_mk) return run_mecke(mk, threads);
    if (*c_vf) return run_verify(vf, threads, threads_given);
    if (*c_svg) return run_export_svg(svg_in, svg_out, svg_width);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}
