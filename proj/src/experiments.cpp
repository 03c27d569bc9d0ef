#include "stitlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "stitlab/analytics.hpp"
#include "stitlab/error.hpp"
#include "stitlab/mecke.hpp"
#include "stitlab/palm_sampler.hpp"
#include "stitlab/parallel.hpp"
#include "stitlab/stit_engine.hpp"

namespace stitlab {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

TestReport make_check(std::string name, std::string statistic_name, double statistic, bool pass,
                      std::string detail = {}) {
  TestReport r;
  r.name = std::move(name);
  r.statistic_name = std::move(statistic_name);
  r.statistic = statistic;
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

TestReport with_seed(TestReport r, std::uint64_t seed) {
  r.seeds.push_back(seed);
  return r;
}

struct NamedMeasure {
  std::string name;
  HyperplaneMeasure measure;
};

std::vector<NamedMeasure> planar_measures() {
  return {{"axis-parallel", HyperplaneMeasure(DirectionalDistribution::axis_parallel(2))},
          {"isotropic", HyperplaneMeasure(DirectionalDistribution::isotropic(2))}};
}

ConvexPolytope square(double lo, double hi) { return ConvexPolytope::box(Vec(lo, lo, 0), Vec(hi, hi, 0), 2); }

// ---------------------------------------------------------------------------

void golden(const AcceptanceConfig& cfg, CriterionResult& out) {
  const double ln2 = std::log(2.0);
  const double ln3 = std::log(3.0);
  const std::pair<unsigned, double> refs[] = {{0, 5 + 18 * ln2 - 63.0 / 4 * ln3},
                                              {1, 28 + 90 * ln2 - 657.0 / 8 * ln3}};
  for (const auto& [n, ref] : refs) {
    const auto e = p1j(n, DistributionSpec{3, 1, 1.0, {}});
    const double dev = std::abs(e.value - ref);
    out.checks.push_back(make_check("p1,1(" + std::to_string(n) + ") d=3", "abs deviation", dev,
                                    dev <= cfg.golden.abs_tol,
                                    "value " + fmt(e.value, 10) + ", reference " + fmt(ref, 10) +
                                        ", quadrature error " + fmt(e.error, 3)));
  }
}

void moments(const AcceptanceConfig& cfg, CriterionResult& out) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::tuple<int, int, double> table[] = {{2, 0, 2.0}, {3, 0, 2.0}, {3, 1, 7.0},     {4, 1, 6.0},
                                                {5, 1, 19.0 / 3}, {6, 1, 7.0}, {2, 1, inf}};
  for (const auto& [d, j, ref] : table) {
    const double v = mean_internal_vertices(d, j);
    out.checks.push_back(make_check("closed-form mean d=" + std::to_string(d) + " j=" + std::to_string(j), "value",
                                    v, v == ref, "expected " + fmt(ref)));
  }
  for (auto [d, j] : {std::pair{3, 0}, {3, 1}, {4, 1}}) {
    const auto m = mean_from_table(DistributionSpec{d, j, 1.0, {}}, cfg.moments.n_head);
    const double dev = std::abs(m.total - mean_internal_vertices(d, j));
    out.checks.push_back(make_check("sum n p1j(n) d=" + std::to_string(d) + " j=" + std::to_string(j),
                                    "abs deviation", dev, dev <= cfg.moments.tolerance,
                                    "head " + fmt(m.head, 10) + " + tail " + fmt(m.tail, 10) + " (n <= " +
                                        std::to_string(m.n_head) + ")"));
  }
}

void palm(const AcceptanceConfig& cfg, CriterionResult& out) {
  const unsigned threads = resolve_threads(cfg.threads);
  for (const auto& [d, j] : cfg.palm.cases) {
    std::vector<std::uint64_t> counts;
    counts.reserve(cfg.palm.samples);
    for (const auto& x : sample_palm_batch(d, j, 1.0, cfg.palm.samples, cfg.master_seed, threads))
      counts.push_back(x.internal_vertices);
    auto chi = gof_internal_vertices(counts, d, j, cfg.alpha, cfg.min_samples);
    chi.seeds = {cfg.master_seed};
    out.checks.push_back(chi);

    std::vector<double> xs(counts.begin(), counts.end());
    const auto ci = mean_ci(xs);
    const double target = mean_internal_vertices(d, j);
    const double z = (ci.mean - target) / ci.standard_error();
    out.checks.push_back(with_seed(
        make_check("sample mean d=" + std::to_string(d) + " j=" + std::to_string(j), "z", z,
                   std::abs(z) <= cfg.palm.standard_errors,
                   "mean " + fmt(ci.mean) + " vs " + fmt(target) + ", SE " + fmt(ci.standard_error(), 3)),
        cfg.master_seed));
  }
}

struct SegmentPool {
  std::vector<TypicalSegment> all;
  std::vector<TypicalSegment> subsample;
};

SegmentPool collect_segments(const AcceptanceConfig& cfg, const NamedMeasure& m, const std::string& stream) {
  const auto& p = cfg.window_segments;
  const auto w = square(0.0, cfg.window_side);
  const auto inner = inner_box(w, cfg.window_margin);
  std::vector<std::vector<TypicalSegment>> per_run(p.replications);
  parallel_for(per_run.size(), resolve_threads(cfg.threads), [&](std::size_t r) {
    Rng rng = make_stream(cfg.master_seed, stream + "/" + m.name, r);
    per_run[r] = extract_typical_segments_2d(run_local_stit(w, m.measure, p.horizon, rng), inner);
  });
  SegmentPool pool;
  for (auto& v : per_run) pool.all.insert(pool.all.end(), v.begin(), v.end());
  Rng pick = make_stream(cfg.master_seed, stream + "/subsample/" + m.name);
  std::sample(pool.all.begin(), pool.all.end(), std::back_inserter(pool.subsample), p.test_samples, pick);
  return pool;
}

void window_vertices(const AcceptanceConfig& cfg, CriterionResult& out) {
  const auto& p = cfg.window_segments;
  for (const auto& m : planar_measures()) {
    const auto pool = collect_segments(cfg, m, "window-vertices");
    double sum = 0.0;
    for (const auto& s : pool.all) sum += static_cast<double>(s.internal_vertices);
    const double mean = pool.all.empty() ? 0.0 : sum / pool.all.size();
    const bool enough = pool.all.size() >= p.min_segments;
    auto mean_check = make_check("mean internal vertices, " + m.name, "mean", mean,
                                 enough && std::abs(mean - 2.0) <= p.mean_tolerance,
                                 std::to_string(pool.all.size()) + " segments from " +
                                     std::to_string(p.replications) + " runs at t=" + fmt(p.horizon));
    mean_check.sample_sizes = {pool.all.size()};
    out.checks.push_back(with_seed(mean_check, cfg.master_seed));

    std::vector<std::uint64_t> counts;
    for (const auto& s : pool.subsample) counts.push_back(s.internal_vertices);
    auto chi = gof_internal_vertices(counts, 2, 0, cfg.alpha, std::min(cfg.min_samples, p.test_samples));
    chi.name += ", " + m.name;
    chi.seeds = {cfg.master_seed};
    out.checks.push_back(chi);
  }
}

void birth_times(const AcceptanceConfig& cfg, CriterionResult& out) {
  const auto& p = cfg.window_segments;
  for (const auto& m : planar_measures()) {
    const auto pool = collect_segments(cfg, m, "birth-times");
    std::vector<double> b;
    for (const auto& s : pool.subsample) b.push_back(s.birth_time);
    auto ks = gof_birth_times(b, 2, 0, p.horizon, cfg.alpha, std::min(cfg.min_samples, p.test_samples));
    ks.name += ", " + m.name;
    ks.seeds = {cfg.master_seed};
    ks.detail = "subsample of " + std::to_string(pool.all.size()) + " minus-sampled segments";
    out.checks.push_back(ks);
  }
}

void line_sections(const AcceptanceConfig& cfg, CriterionResult& out) {
  const auto& p = cfg.line_sections;
  const auto w = square(0.0, cfg.window_side);
  const double mid = 0.5 * cfg.window_side;
  const double x0 = mid - 0.5 * static_cast<double>(p.probes_per_line);
  if (x0 < cfg.window_margin) throw Error(Errc::Config, "line_sections.probes_per_line does not fit the inner window");
  const std::size_t lines = (p.probes + p.probes_per_line - 1) / p.probes_per_line;
  for (const auto& m : planar_measures()) {
    std::vector<std::uint64_t> counts(lines * p.probes_per_line);
    parallel_for(lines, resolve_threads(cfg.threads), [&](std::size_t r) {
      Rng rng = make_stream(cfg.master_seed, "line-sections/" + m.name, r);
      const auto st = run_local_stit(w, m.measure, p.horizon, rng);
      // consecutive unit probes on one line: independent counts
      const auto pts = line_section(st, Vec(x0, mid, 0), Vec(x0 + p.probes_per_line, mid, 0));
      for (const auto& x : pts) {
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(x.x() - x0), p.probes_per_line - 1);
        ++counts[r * p.probes_per_line + k];
      }
    });
    const double expected = p.horizon * m.measure.line_hit_rate(Vec(1, 0, 0));
    auto disp = poisson_dispersion(counts, expected, cfg.alpha, cfg.min_samples);
    disp.name += ", " + m.name;
    disp.seeds = {cfg.master_seed};
    out.checks.push_back(disp);

    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= counts.size();
    const double rel = std::abs(mean - expected) / expected;
    auto mc = make_check("mean chord count, " + m.name, "relative deviation", rel, rel <= p.tolerance,
                         "mean " + fmt(mean) + " vs " + fmt(expected) + " over " + std::to_string(counts.size()) +
                             " probes");
    mc.sample_sizes = {counts.size()};
    out.checks.push_back(with_seed(mc, cfg.master_seed));
  }
}

void mecke(const AcceptanceConfig& cfg, CriterionResult& out) {
  const auto& p = cfg.mecke;
  const auto w = square(0.0, cfg.window_side);
  const auto inner = inner_box(w, cfg.window_margin);
  const double mid = 0.5 * cfg.window_side;
  const auto half = ConvexPolytope::box(Vec(cfg.window_margin, cfg.window_margin, 0),
                                        Vec(mid, cfg.window_side - cfg.window_margin, 0), 2);
  MeckeOptions o;
  o.replications = p.replications;
  o.seed = cfg.master_seed;
  o.threads = resolve_threads(cfg.threads);
  o.s_grid = uniform_grid(p.horizon, p.grid_nodes);
  o.inner_mc = p.inner_mc;
  const std::pair<std::string, MeckeFunctional> functionals[] = {
      {"simple", MeckeFunctional::simple(p.horizon, inner, [](double s) { return s; }, [](double v) { return v; }, half)},
      {"nested", MeckeFunctional::nested(p.horizon, inner, 0)},
  };
  for (const auto& m : planar_measures()) {
    for (const auto& [name, g] : functionals) {
      const auto l = mecke_lhs(g, w, m.measure, o);
      const auto r = mecke_rhs(g, w, m.measure, o);
      TestReport t;
      t.name = "Mecke " + name + ", " + m.name;
      t.statistic_name = "LHS - RHS";
      t.statistic = l.mean - r.mean;
      t.interval = std::pair{l.mean - r.mean - (l.half_width + r.half_width), l.mean - r.mean + (l.half_width + r.half_width)};
      t.sample_sizes = {l.n, r.n};
      t.seeds = {cfg.master_seed};
      t.threshold = 0.05;
      t.pass = intervals_overlap(l, r);
      t.detail = "LHS " + fmt(l.mean) + " +- " + fmt(l.half_width, 3) + ", RHS " + fmt(r.mean) + " +- " +
                 fmt(r.half_width, 3);
      out.checks.push_back(t);
    }
  }
}

struct StatSamples {
  std::vector<double> cells;
  std::vector<double> length;
  std::vector<double> chords;
};

void add(StatSamples& s, const SummaryStatistics& x) {
  s.cells.push_back(static_cast<double>(x.cell_count));
  s.length.push_back(x.total_face_measure);
  double c = 0.0;
  for (auto v : x.chord_counts) c += static_cast<double>(v);
  s.chords.push_back(c);
}

void compare(const std::string& label, const StatSamples& a, const StatSamples& b, const AcceptanceConfig& cfg,
             CriterionResult& out) {
  const std::pair<const char*, const std::vector<double>StatSamples::*> fields[] = {
      {"cell count", &StatSamples::cells}, {"face length", &StatSamples::length}, {"chord count", &StatSamples::chords}};
  for (const auto& [name, field] : fields) {
    auto r = two_sample(a.*field, b.*field, cfg.alpha);
    r.name = label + ": " + name;
    r.seeds = {cfg.master_seed};
    out.checks.push_back(r);
  }
}

// Miles-Lantuejoul estimate of the maximal segment intensity in [0, side]^2:
// each segment inside the window counts 1 / |{x : s + x in W}|.
double segment_intensity_estimate(const TessellationState& st, double side) {
  double est = 0.0;
  for (const auto& rec : st.ledger) {
    if (rec.touches_window_boundary) continue;
    const Segment s = rec.face.segment();
    const double wx = side - std::abs(s.b.x() - s.a.x());
    const double wy = side - std::abs(s.b.y() - s.a.y());
    if (wx > 0.0 && wy > 0.0) est += 1.0 / (wx * wy);
  }
  return est;
}

void stability(const AcceptanceConfig& cfg, CriterionResult& out) {
  const auto& p = cfg.stability;
  const double side = cfg.window_side;
  const auto big = square(0.0, side);
  const auto small = square(0.0, 0.5 * side);
  const auto region = inner_box(big, cfg.window_margin);
  const double mid = 0.5 * side;
  const double reach = mid - cfg.window_margin - 1.0;
  const std::vector<Segment> probes{{Vec(mid - reach, mid, 0), Vec(mid + reach, mid, 0)},
                                    {Vec(mid, mid - reach, 0), Vec(mid, mid + reach, 0)}};
  const HyperplaneMeasure iso(DirectionalDistribution::isotropic(2));
  const unsigned threads = resolve_threads(cfg.threads);
  const std::size_t n = p.replications;

  std::vector<SummaryStatistics> ref(n), iterated(n), scaled(n), restricted(n), direct(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Rng r0 = make_stream(cfg.master_seed, "stability/reference", i);
    ref[i] = summary_statistics(run_local_stit(big, iso, 1.0, r0), region, probes);

    Rng r1 = make_stream(cfg.master_seed, "stability/iterate", i);
    const auto base = run_local_stit(small, iso, 1.0, r1);
    std::vector<TessellationState> fresh;
    for (std::size_t k = 0; k < base.cells.size(); ++k) fresh.push_back(run_local_stit(small, iso, 1.0, r1));
    iterated[i] = summary_statistics(rescale(iterate(base, fresh), 2.0), region, probes);

    Rng r2 = make_stream(cfg.master_seed, "stability/scale", i);
    scaled[i] = summary_statistics(rescale(run_local_stit(small, iso, 2.0, r2), 2.0), region, probes);

    Rng r3 = make_stream(cfg.master_seed, "stability/restrict", i);
    restricted[i] = summary_statistics(run_local_stit(big, iso, 1.0, r3), region, probes);
    Rng r4 = make_stream(cfg.master_seed, "stability/direct", i);
    direct[i] = summary_statistics(run_local_stit(region, iso, 1.0, r4), region, probes);
  });
  StatSamples s_ref, s_it, s_sc, s_re, s_di;
  for (std::size_t i = 0; i < n; ++i) {
    add(s_ref, ref[i]);
    add(s_it, iterated[i]);
    add(s_sc, scaled[i]);
    add(s_re, restricted[i]);
    add(s_di, direct[i]);
  }
  compare("rescale(iterate(Y1, fresh Y1), 2) vs Y1", s_it, s_ref, cfg, out);
  compare("rescale(Y2, 2) vs Y1", s_sc, s_ref, cfg, out);
  compare("restriction vs direct run", s_re, s_di, cfg, out);

  // maximal segment midpoints per unit area, axis-parallel lines
  const HyperplaneMeasure axis(DirectionalDistribution::axis_parallel(2));
  const std::size_t m = p.intensity_replications;
  std::vector<double> c1(m), c2(m);
  parallel_for(m, threads, [&](std::size_t i) {
    for (int k = 0; k < 2; ++k) {
      Rng rng = make_stream(cfg.master_seed, k == 0 ? "intensity/t1" : "intensity/t2", i);
      const auto st = run_local_stit(big, axis, k == 0 ? 1.0 : 2.0, rng);
      (k == 0 ? c1 : c2)[i] = segment_intensity_estimate(st, side);
    }
  });
  const auto a = mean_ci(c1);
  const auto b = mean_ci(c2);
  const double ratio = b.mean / a.mean;
  const double se = ratio * std::sqrt(std::pow(a.standard_error() / a.mean, 2) + std::pow(b.standard_error() / b.mean, 2));
  const double z = 1.959963984540054;
  TestReport rt;
  rt.name = "intensity ratio t=2 vs t=1";
  rt.statistic_name = "ratio";
  rt.statistic = ratio;
  rt.interval = std::pair{ratio - z * se, ratio + z * se};
  rt.sample_sizes = {m, m};
  rt.seeds = {cfg.master_seed};
  rt.threshold = 0.05;
  rt.pass = std::abs(ratio - 4.0) <= z * se;
  rt.detail = "95% CI contains 4";
  out.checks.push_back(rt);

  const double predicted = segment_intensity_2d(axis, 0, 1.0);
  const double rel = std::abs(a.mean - predicted) / predicted;
  auto it = make_check("segment intensity t=1, axis-parallel", "relative deviation", rel,
                       rel <= p.intensity_tolerance,
                       fmt(a.mean) + " +- " + fmt(a.half_width, 3) + " per unit area vs " + fmt(predicted));
  it.sample_sizes = {m};
  out.checks.push_back(with_seed(it, cfg.master_seed));
}

// CDF of the normal angle of the first cut of a square under isotropic lines:
// density proportional to |cos| + |sin| on [0, pi).
double square_angle_cdf(double th) {
  if (th <= 0.0) return 0.0;
  if (th >= std::numbers::pi) return 1.0;
  if (th <= 0.5 * std::numbers::pi) return (std::sin(th) + 1.0 - std::cos(th)) / 4.0;
  return (3.0 - std::sin(th) - std::cos(th)) / 4.0;
}

void first_jump(const AcceptanceConfig& cfg, CriterionResult& out) {
  const auto w = square(0.0, cfg.window_side);
  const std::size_t n = cfg.first_jump.replications;
  for (const auto& m : planar_measures()) {
    std::vector<double> times(n), angle(n), offset(n);
    parallel_for(n, resolve_threads(cfg.threads), [&](std::size_t i) {
      Rng rng = make_stream(cfg.master_seed, "first-jump/" + m.name, i);
      StitSimulator sim(w, m.measure);
      sim.step(std::numeric_limits<double>::infinity(), rng);
      const auto& e = sim.state().events.front();
      times[i] = e.time;
      angle[i] = std::atan2(e.hyperplane.normal.y(), e.hyperplane.normal.x());
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& v : w.vertices()) {
        lo = std::min(lo, v.dot(e.hyperplane.normal));
        hi = std::max(hi, v.dot(e.hyperplane.normal));
      }
      offset[i] = (e.hyperplane.offset - lo) / (hi - lo);
    });
    const double rate = m.measure.hit_rate(w);
    const auto ks_t = ks_one_sample(times, [&](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-rate * x); });
    TestReport ht;
    ht.name = "holding time ~ Exp(" + fmt(rate) + "), " + m.name;
    ht.statistic_name = "KS D";
    ht.statistic = ks_t.statistic;
    ht.p_value = ks_t.p_value;
    ht.sample_sizes = {n};
    ht.seeds = {cfg.master_seed};
    ht.threshold = cfg.alpha;
    ht.pass = ks_t.p_value > cfg.alpha;
    out.checks.push_back(ht);

    TestReport dir;
    dir.name = "first normal direction, " + m.name;
    dir.sample_sizes = {n};
    dir.seeds = {cfg.master_seed};
    dir.threshold = cfg.alpha;
    if (m.measure.directional().is_isotropic()) {
      const auto ks = ks_one_sample(angle, square_angle_cdf);
      dir.statistic_name = "KS D";
      dir.statistic = ks.statistic;
      dir.p_value = ks.p_value;
    } else {
      const auto& atoms = m.measure.directional().atoms();
      std::vector<double> observed(atoms.size(), 0.0);
      std::vector<double> probs;
      double total = 0.0;
      for (const auto& a : atoms) total += a.weight * width(w, a.normal);
      for (const auto& a : atoms) probs.push_back(a.weight * width(w, a.normal) / total);
      for (double th : angle) {
        const Vec u(std::cos(th), std::sin(th), 0);
        std::size_t best = 0;
        for (std::size_t k = 1; k < atoms.size(); ++k)
          if (std::abs(atoms[k].normal.dot(u)) > std::abs(atoms[best].normal.dot(u))) best = k;
        observed[best] += 1.0;
      }
      const auto chi = chi_square_categories(observed, probs);
      dir.statistic_name = "chi2";
      dir.statistic = chi.statistic;
      dir.p_value = chi.p_value;
    }
    dir.pass = *dir.p_value > cfg.alpha;
    out.checks.push_back(dir);

    const auto ks_o = ks_one_sample(offset, [](double x) { return std::clamp(x, 0.0, 1.0); });
    TestReport off;
    off.name = "first offset uniform across the window, " + m.name;
    off.statistic_name = "KS D";
    off.statistic = ks_o.statistic;
    off.p_value = ks_o.p_value;
    off.sample_sizes = {n};
    off.seeds = {cfg.master_seed};
    off.threshold = cfg.alpha;
    off.pass = ks_o.p_value > cfg.alpha;
    out.checks.push_back(off);
  }
}

double budget_of(int id, const AcceptanceConfig& cfg) {
  switch (id) {
    case 1: return cfg.golden.time_budget;
    case 2: return cfg.moments.time_budget;
    case 3: return cfg.palm.time_budget;
    case 4: return cfg.window_segments.time_budget;
    case 5: return cfg.window_segments.birth_time_budget;
    case 6: return cfg.line_sections.time_budget;
    case 7: return cfg.mecke.time_budget;
    case 8: return cfg.stability.time_budget;
    case 9: return cfg.first_jump.time_budget;
    default: throw Error(Errc::Config, "no criterion " + std::to_string(id));
  }
}

}  // namespace

bool AcceptanceReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.pass; });
}

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "Golden constants p1,1(0), p1,1(1) for d=3";
    case 2: return "Closed-form means and moment sums";
    case 3: return "Palm sampler vs quadrature";
    case 4: return "Window-engine internal vertices, d=2";
    case 5: return "Birth-time law of minus-sampled segments, d=2";
    case 6: return "Line sections are Poisson";
    case 7: return "Mecke-type formula, simple and nested functionals";
    case 8: return "STIT stability, scaling, consistency and segment intensity";
    case 9: return "First jump: holding time and first hyperplane";
    default: throw Error(Errc::Config, "no criterion " + std::to_string(id));
  }
}

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  CriterionResult out;
  out.id = id;
  out.title = criterion_title(id);
  out.time_budget = budget_of(id, cfg);
  const auto start = Clock::now();
  switch (id) {
    case 1: golden(cfg, out); break;
    case 2: moments(cfg, out); break;
    case 3: palm(cfg, out); break;
    case 4: window_vertices(cfg, out); break;
    case 5: birth_times(cfg, out); break;
    case 6: line_sections(cfg, out); break;
    case 7: mecke(cfg, out); break;
    case 8: stability(cfg, out); break;
    case 9: first_jump(cfg, out); break;
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const auto& c) { return c.pass; }) &&
             out.seconds <= out.time_budget;
  return out;
}

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg, const std::function<void(const CriterionResult&)>& progress) {
  AcceptanceReport report;
  report.master_seed = cfg.master_seed;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!cfg.only.empty() && std::find(cfg.only.begin(), cfg.only.end(), id) == cfg.only.end()) continue;
    report.criteria.push_back(run_criterion(id, cfg));
    if (progress) progress(report.criteria.back());
  }
  return report;
}

}  // namespace stitlab
