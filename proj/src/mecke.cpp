#include "stitlab/mecke.hpp"

#include "stitlab/error.hpp"
#include "stitlab/parallel.hpp"
#include "stitlab/random.hpp"
#include "stitlab/stit_engine.hpp"

namespace stitlab {

namespace {

void check(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure) {
  if (!(g.horizon > 0.0)) throw Error(Errc::Config, "horizon must be positive");
  if (window.dim() != measure.dim()) throw Error(Errc::BadDimension, "window and measure dimension differ");
  if (g.inner.empty() || !window.contains(g.inner)) throw Error(Errc::BadInnerWindow, "inner window must lie in the window");
  if (g.kind == MeckeFunctional::Kind::Simple && (!g.phi || !g.psi))
    throw Error(Errc::Config, "simple functional needs phi and psi");
  if (g.kind == MeckeFunctional::Kind::Nested && window.dim() != 2)
    throw Error(Errc::BadDimension, "nested functional is planar");
}

double simple_value(const MeckeFunctional& g, double s, const Face& face) {
  if (g.region && !g.region->contains(face.center(), 0.0)) return 0.0;
  return g.phi(s) * g.psi(face.measure());
}

// Internal vertices that z ∩ h receives from an independent continuation of
// one side of the split between times s and the horizon.
std::size_t side_hits(const ConvexPolytope& piece, const HyperplaneMeasure& measure, double duration, Rng& rng) {
  std::vector<Label> labels(piece.labels().begin(), piece.labels().end());
  for (auto& l : labels)
    if (l != kForeignLabel) l = kBoundaryLabel;
  TessellationState st;
  st.window = piece.with_labels(std::move(labels));
  st.cells.push_back(CellRecord{0, st.window, 0.0});
  std::size_t hits = 0;
  EngineOptions opt;
  opt.on_split = [&](const SplitObservation& obs) {
    for (Label l : obs.endpoint_labels) hits += l == kForeignLabel;
  };
  StitSimulator sim(std::move(st), measure, std::move(opt));
  sim.advance_to(duration, rng);
  return hits;
}

double bracket(const MeckeFunctional& g, const ConvexPolytope& z, const HyperplaneMeasure& measure, double s,
               Rng& rng) {
  for (;;) {
    const Hyperplane h = measure.sample_hitting(z, rng);
    SplitResult r;
    try {
      r = split_polytope(z, h, kForeignLabel, CutPolicy::Strict);
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateCut || e.code() == Errc::NoIntersection) continue;
      throw;
    }
    if (g.kind == MeckeFunctional::Kind::Simple) return simple_value(g, s, r.face);
    const double rest = g.horizon - s;
    const std::size_t n = side_hits(r.plus, measure, rest, rng) + side_hits(r.minus, measure, rest, rng);
    return n == g.vertex_count ? 1.0 : 0.0;
  }
}

double lhs_one(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure, Rng& rng) {
  std::vector<FaceId> local;
  double total = 0.0;
  EngineOptions opt;
  opt.on_split = [&](const SplitObservation& obs) {
    if (!g.inner.contains(*obs.parent)) return;
    if (g.kind == MeckeFunctional::Kind::Simple) total += simple_value(g, obs.time, obs.face->face);
    else local.push_back(obs.face->id);
  };
  StitSimulator sim(window, measure, std::move(opt));
  sim.advance_to(g.horizon, rng);
  if (g.kind == MeckeFunctional::Kind::Nested)
    for (FaceId id : local) total += sim.state().ledger[id].internal_vertices.size() == g.vertex_count;
  return total;
}

double rhs_one(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure,
               const MeckeOptions& o, Rng& rng) {
  StitSimulator sim(window, measure);
  std::vector<double> f(o.s_grid.size(), 0.0);
  for (std::size_t k = 0; k < o.s_grid.size(); ++k) {
    const double s = o.s_grid[k];
    sim.advance_to(s, rng);
    const auto& cells = sim.state().cells;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& z = cells[i].polytope;
      if (!g.inner.contains(z)) continue;
      double acc = 0.0;
      for (std::size_t m = 0; m < o.inner_mc; ++m) acc += bracket(g, z, measure, s, rng);
      f[k] += sim.cell_rate(i) * acc / static_cast<double>(o.inner_mc);
    }
  }
  double integral = 0.0;
  for (std::size_t k = 1; k < f.size(); ++k) integral += 0.5 * (f[k] + f[k - 1]) * (o.s_grid[k] - o.s_grid[k - 1]);
  return integral;
}

}  // namespace

MeckeFunctional MeckeFunctional::simple(double horizon, ConvexPolytope inner, std::function<double(double)> phi,
                                        std::function<double(double)> psi, std::optional<ConvexPolytope> region) {
  MeckeFunctional g;
  g.kind = Kind::Simple;
  g.horizon = horizon;
  g.inner = std::move(inner);
  g.phi = std::move(phi);
  g.psi = std::move(psi);
  g.region = std::move(region);
  return g;
}

MeckeFunctional MeckeFunctional::nested(double horizon, ConvexPolytope inner, std::size_t vertex_count) {
  MeckeFunctional g;
  g.kind = Kind::Nested;
  g.horizon = horizon;
  g.inner = std::move(inner);
  g.vertex_count = vertex_count;
  return g;
}

std::vector<double> uniform_grid(double horizon, std::size_t nodes) {
  if (nodes < 2) throw Error(Errc::Config, "quadrature grid needs at least two nodes");
  std::vector<double> out(nodes);
  for (std::size_t k = 0; k < nodes; ++k) out[k] = horizon * static_cast<double>(k) / static_cast<double>(nodes - 1);
  return out;
}

std::vector<double> mecke_lhs_samples(const MeckeFunctional& g, const ConvexPolytope& window,
                                      const HyperplaneMeasure& measure, const MeckeOptions& options) {
  check(g, window, measure);
  std::vector<double> out(options.replications);
  parallel_for(out.size(), options.threads, [&](std::size_t i) {
    Rng rng = make_stream(options.seed, "mecke-lhs", i);
    out[i] = lhs_one(g, window, measure, rng);
  });
  return out;
}

std::vector<double> mecke_rhs_samples(const MeckeFunctional& g, const ConvexPolytope& window,
                                      const HyperplaneMeasure& measure, const MeckeOptions& options) {
  check(g, window, measure);
  if (options.inner_mc < 1) throw Error(Errc::Config, "inner_mc must be at least 1");
  const auto& grid = options.s_grid;
  if (grid.size() < 2) throw Error(Errc::Config, "s_grid needs at least two nodes");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(Errc::Config, "s_grid must be increasing");
  if (grid.front() < 0.0 || grid.back() > g.horizon) throw Error(Errc::Config, "s_grid must lie in [0, horizon]");
  std::vector<double> out(options.replications);
  parallel_for(out.size(), options.threads, [&](std::size_t i) {
    Rng rng = make_stream(options.seed, "mecke-rhs", i);
    out[i] = rhs_one(g, window, measure, options, rng);
  });
  return out;
}

MeanCi mecke_lhs(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure,
                 const MeckeOptions& options) {
  const auto xs = mecke_lhs_samples(g, window, measure, options);
  return mean_ci(xs);
}

MeanCi mecke_rhs(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure,
                 const MeckeOptions& options) {
  const auto xs = mecke_rhs_samples(g, window, measure, options);
  return mean_ci(xs);
}

}  // namespace stitlab
