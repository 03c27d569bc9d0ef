#include "stitlab/stit_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "stitlab/error.hpp"

namespace stitlab {

namespace {

constexpr int kMaxCutAttempts = 10000;

bool face_touches_boundary(const Face& face, const SplitResult& r, const std::vector<Hyperplane>& window_planes,
                           double tol, int dim) {
  if (dim == 2) return r.endpoint_labels[0] < 0 || r.endpoint_labels[1] < 0;
  for (const auto& v : face.vertices)
    for (const auto& h : window_planes)
      if (h.signed_distance(v) >= -tol) return true;
  return false;
}

struct AppliedSplit {
  std::size_t plus_slot;
  std::size_t minus_slot;
  FaceId face_id;
};

// Books a split of the cell in `slot` into the state: ledger record, internal
// vertices, children and event.
AppliedSplit apply_split(TessellationState& st, std::size_t slot, SplitResult&& r, const Hyperplane& h, double time,
                         const std::vector<Hyperplane>& window_planes, const EngineOptions* options) {
  const int dim = st.dim();
  const FaceId face_id = static_cast<FaceId>(st.ledger.size());
  const CellId parent_id = st.cells[slot].id;

  MaximalPolytopeRecord rec;
  rec.id = face_id;
  rec.hyperplane = h;
  rec.birth_time = time;
  rec.parent_cell_id = parent_id;
  rec.touches_window_boundary =
      face_touches_boundary(r.face, r, window_planes, kEpsGeom * st.window.diameter(), dim);
  rec.face = std::move(r.face);
  if (dim == 2) {
    for (int k = 0; k < 2; ++k) {
      const Label lab = r.endpoint_labels[k];
      if (lab >= 0 && lab < face_id) st.ledger[lab].internal_vertices.push_back({rec.face.vertices[k], time});
    }
  }
  st.ledger.push_back(std::move(rec));

  const CellId plus_id = st.next_cell_id++;
  const CellId minus_id = st.next_cell_id++;
  st.events.push_back(SplitEvent{time, parent_id, h, plus_id, minus_id, face_id});

  if (options && options->on_split) {
    SplitObservation obs{time, &st.cells[slot].polytope, &st.ledger.back(), r.endpoint_labels};
    options->on_split(obs);
  }
  st.cells[slot] = CellRecord{plus_id, std::move(r.plus), time};
  st.cells.push_back(CellRecord{minus_id, std::move(r.minus), time});
  return {slot, st.cells.size() - 1, face_id};
}

// Replays the events of `src` inside the cell of `out` at `root_slot`, which
// stands in for src's root cell. Splits that miss the cell pass it on to the
// child on its side.
void absorb(TessellationState& out, const TessellationState& src, std::size_t root_slot, double time_shift) {
  const auto planes = out.window.facet_planes();
  std::unordered_map<CellId, std::size_t> slot_of;
  slot_of.emplace(0, root_slot);
  for (const auto& e : src.events) {
    auto it = slot_of.find(e.cell_id);
    if (it == slot_of.end()) continue;
    const std::size_t slot = it->second;
    slot_of.erase(it);
    const auto& cell = out.cells[slot].polytope;
    SplitResult r;
    try {
      r = split_polytope(cell, e.hyperplane, static_cast<Label>(out.ledger.size()), CutPolicy::Lenient);
    } catch (const Error& err) {
      if (err.code() != Errc::NoIntersection && err.code() != Errc::DegenerateCut) throw;
      const bool plus_side = e.hyperplane.signed_distance(cell.centroid()) >= 0.0;
      slot_of.emplace(plus_side ? e.plus_id : e.minus_id, slot);
      continue;
    }
    const auto applied = apply_split(out, slot, std::move(r), e.hyperplane, e.time + time_shift, planes, nullptr);
    slot_of.emplace(e.plus_id, applied.plus_slot);
    slot_of.emplace(e.minus_id, applied.minus_slot);
  }
}

bool same_window(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return false;
  const double tol = kEpsGeom * std::max(a.diameter(), 1.0);
  for (std::size_t i = 0; i < a.vertices().size(); ++i)
    if ((a.vertices()[i] - b.vertices()[i]).norm() > tol) return false;
  return true;
}

}  // namespace

TessellationState TessellationState::initial(const ConvexPolytope& window) {
  if (window.empty()) throw Error(Errc::InvalidWindow, "window must have nonempty interior");
  TessellationState st;
  std::vector<Label> boundary(window.labels().size(), kBoundaryLabel);
  st.window = window.with_labels(boundary);
  st.cells.push_back(CellRecord{0, st.window, 0.0});
  return st;
}

// ---------------------------------------------------------------------------
// StitSimulator

StitSimulator::StitSimulator(const ConvexPolytope& window, HyperplaneMeasure measure, EngineOptions options)
    : StitSimulator(TessellationState::initial(window), std::move(measure), std::move(options)) {}

StitSimulator::StitSimulator(TessellationState state, HyperplaneMeasure measure, EngineOptions options)
    : state_(std::move(state)), measure_(std::move(measure)), options_(std::move(options)) {
  if (state_.window.empty() || state_.cells.empty()) throw Error(Errc::InvalidWindow, "state has no cells");
  if (state_.dim() != measure_.dim()) throw Error(Errc::BadDimension, "measure and window dimension differ");
  if (state_.dim() == 3) window_planes_ = state_.window.facet_planes();
  rebuild_rates();
}

void StitSimulator::rebuild_rates() {
  rates_.clear();
  tree_.clear();
  for (const auto& c : state_.cells) rates_.push_back(measure_.hit_rate(c.polytope));
  tree_ = rates_;
  for (std::size_t i = 1; i <= tree_.size(); ++i) {
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= tree_.size()) tree_[parent - 1] += tree_[i - 1];
  }
}

double StitSimulator::total_rate() const {
  double s = 0.0;
  for (std::size_t i = tree_.size(); i > 0; i -= i & (~i + 1)) s += tree_[i - 1];
  return s;
}

void StitSimulator::set_rate(std::size_t slot, double rate) {
  if (slot == rates_.size()) {
    // Append: node n covers (n - lowbit(n), n].
    const std::size_t n = slot + 1;
    double covered = rate;
    const std::size_t low = n - (n & (~n + 1));
    for (std::size_t i = n - 1; i > low; i -= i & (~i + 1)) covered += tree_[i - 1];
    rates_.push_back(rate);
    tree_.push_back(covered);
    return;
  }
  const double delta = rate - rates_[slot];
  rates_[slot] = rate;
  for (std::size_t i = slot + 1; i <= tree_.size(); i += i & (~i + 1)) tree_[i - 1] += delta;
}

std::size_t StitSimulator::pick_slot(double target) const {
  const std::size_t n = tree_.size();
  std::size_t pos = 0;
  for (std::size_t step = std::bit_floor(n); step > 0; step >>= 1) {
    if (pos + step <= n && tree_[pos + step - 1] <= target) {
      pos += step;
      target -= tree_[pos - 1];
    }
  }
  pos = std::min(pos, n - 1);
  // Guard against rounding landing on an empty slot.
  while (rates_[pos] <= 0.0 && pos > 0) --pos;
  return pos;
}

bool StitSimulator::step(double t_limit, Rng& rng) {
  const double rate = total_rate();
  if (!(rate > 0.0)) {
    state_.time = std::max(state_.time, t_limit);
    return false;
  }
  const double dt = exponential(rng, rate);
  if (state_.time + dt > t_limit) {
    state_.time = std::max(state_.time, t_limit);
    return false;
  }
  if (state_.cells.size() >= options_.max_cells)
    throw Error(Errc::MaxCellsExceeded, "cell count reached " + std::to_string(options_.max_cells));
  state_.time += dt;
  const std::size_t slot = pick_slot(uniform01(rng) * rate);
  const auto& cell = state_.cells[slot].polytope;
  const Label cut = static_cast<Label>(state_.ledger.size());
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxCutAttempts) throw Error(Errc::DegenerateCut, "could not draw a non-degenerate cut");
    const Hyperplane h = measure_.sample_hitting(cell, rng);
    SplitResult r;
    try {
      r = split_polytope(cell, h, cut, CutPolicy::Strict);
    } catch (const Error& err) {
      if (err.code() == Errc::DegenerateCut || err.code() == Errc::NoIntersection) continue;
      throw;
    }
    const auto applied = apply_split(state_, slot, std::move(r), h, state_.time, window_planes_, &options_);
    set_rate(applied.plus_slot, measure_.hit_rate(state_.cells[applied.plus_slot].polytope));
    set_rate(applied.minus_slot, measure_.hit_rate(state_.cells[applied.minus_slot].polytope));
    return true;
  }
}

void StitSimulator::advance_to(double t_end, Rng& rng) {
  while (step(t_end, rng)) {
  }
}

TessellationState run_local_stit(const ConvexPolytope& window, const HyperplaneMeasure& measure, double t_end,
                                 Rng& rng, EngineOptions options) {
  if (!(t_end >= 0.0)) throw Error(Errc::InvalidArgument, "t_end must be nonnegative");
  StitSimulator sim(window, measure, std::move(options));
  sim.advance_to(t_end, rng);
  return std::move(sim).take();
}

TessellationState replay(const ConvexPolytope& window, const std::vector<SplitEvent>& events, double time) {
  TessellationState out = TessellationState::initial(window);
  TessellationState src;
  src.events = events;
  absorb(out, src, 0, 0.0);
  out.time = time;
  return out;
}

// ---------------------------------------------------------------------------
// Operations on states

std::vector<Vec> line_section(const TessellationState& state, const Vec& a, const Vec& b) {
  if (!state.window.contains(a) || !state.window.contains(b))
    throw Error(Errc::SegmentOutsideWindow, "probe segment must lie in the window");
  const Segment probe{a, b};
  const Vec dir = b - a;
  const double len2 = dir.squaredNorm();
  std::vector<std::pair<double, Vec>> hits;
  for (const auto& rec : state.ledger) {
    if (auto x = segment_face_crossing(probe, rec.face, state.dim())) {
      hits.emplace_back(len2 > 0.0 ? (*x - a).dot(dir) / len2 : 0.0, *x);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  const double tol = kEpsGeom * state.window.diameter();
  std::vector<Vec> out;
  for (const auto& [t, x] : hits) {
    if (!out.empty() && (out.back() - x).norm() <= tol) continue;
    out.push_back(x);
  }
  return out;
}

TessellationState restrict(const TessellationState& state, const ConvexPolytope& sub_window) {
  if (sub_window.dim() != state.dim()) throw Error(Errc::BadDimension, "sub-window dimension differs");
  if (!state.window.contains(sub_window)) throw Error(Errc::NotContained, "sub-window must lie in the window");
  TessellationState out = TessellationState::initial(sub_window);
  absorb(out, state, 0, 0.0);
  out.time = state.time;
  return out;
}

TessellationState iterate(const TessellationState& state, const std::vector<TessellationState>& fresh) {
  if (fresh.size() < state.cells.size())
    throw Error(Errc::InsufficientFresh, "need one fresh tessellation per cell");
  double horizon = 0.0;
  for (const auto& f : fresh) {
    if (!same_window(f.window, state.window)) throw Error(Errc::WindowMismatch, "fresh window differs");
    horizon = std::max(horizon, f.time);
  }
  TessellationState out = state;
  const std::size_t n = state.cells.size();
  for (std::size_t i = 0; i < n; ++i) absorb(out, fresh[i], i, state.time);
  out.time = state.time + horizon;
  return out;
}

TessellationState rescale(const TessellationState& state, double factor) {
  if (!(factor > 0.0)) throw Error(Errc::NonPositiveFactor, "rescale factor must be positive");
  TessellationState out = state;
  out.window = state.window.scaled(factor);
  for (auto& c : out.cells) c.polytope = c.polytope.scaled(factor);
  for (auto& rec : out.ledger) {
    for (auto& v : rec.face.vertices) v *= factor;
    rec.hyperplane.offset *= factor;
    for (auto& iv : rec.internal_vertices) iv.point *= factor;
  }
  for (auto& e : out.events) e.hyperplane.offset *= factor;
  return out;
}

std::vector<TypicalSegment> extract_typical_segments_2d(const TessellationState& state,
                                                        const ConvexPolytope& inner) {
  if (state.dim() != 2) throw Error(Errc::BadDimension, "typical segment extraction is planar");
  if (inner.dim() != 2 || !state.window.contains(inner, 0.0))
    throw Error(Errc::BadInnerWindow, "inner window must lie in the window");
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& v : inner.vertices()) margin = std::min(margin, state.window.depth(v));
  if (!(margin > kEpsGeom * state.window.diameter()))
    throw Error(Errc::BadInnerWindow, "inner window needs a positive margin");
  std::vector<TypicalSegment> out;
  for (const auto& rec : state.ledger) {
    if (rec.touches_window_boundary) continue;
    const Segment s = rec.face.segment();
    if (!inner.contains(s.midpoint(), 0.0)) continue;
    out.push_back({rec.birth_time, s.length(), rec.internal_vertices.size()});
  }
  return out;
}

SummaryStatistics summary_statistics(const TessellationState& state, const ConvexPolytope& region,
                                     const std::vector<Segment>& probes) {
  const TessellationState r = restrict(state, region);
  SummaryStatistics s;
  s.cell_count = r.cells.size();
  for (const auto& rec : r.ledger) s.total_face_measure += rec.face.measure();
  for (const auto& p : probes) s.chord_counts.push_back(line_section(r, p.a, p.b).size());
  return s;
}

ConvexPolytope inner_box(const ConvexPolytope& window, double margin) {
  Vec lo = Vec::Constant(std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  for (const auto& v : window.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec m = Vec::Constant(margin);
  if (window.dim() == 2) {
    lo.z() = 0.0;
    hi.z() = 0.0;
  }
  return ConvexPolytope::box(lo + m, hi - m, window.dim());
}

}  // namespace stitlab
