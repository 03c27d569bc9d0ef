#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stitlab/geometry.hpp"
#include "stitlab/hyperplane_measure.hpp"
#include "stitlab/random.hpp"

namespace stitlab {

using CellId = std::int64_t;
using FaceId = std::int64_t;

/// Labels at or below this value tag boundary edges that belong to an outer
/// structure the engine does not own (see EngineOptions::on_split).
inline constexpr Label kForeignLabel = -2;

struct CellRecord {
  CellId id = 0;
  ConvexPolytope polytope;
  double birth_time = 0.0;
};

struct InternalVertex {
  Vec point;
  double time = 0.0;
};

/// Birth-time-marked maximal (d-1)-polytope z ∩ h created by one split.
struct MaximalPolytopeRecord {
  FaceId id = 0;
  Face face;
  Hyperplane hyperplane;
  double birth_time = 0.0;
  CellId parent_cell_id = 0;
  /// d=2 only: later chord endpoints in the relative interior of the face.
  std::vector<InternalVertex> internal_vertices;
  /// True if the face reaches the boundary of the window (clipped by it).
  bool touches_window_boundary = false;
};

struct SplitEvent {
  double time = 0.0;
  CellId cell_id = 0;
  Hyperplane hyperplane;
  CellId plus_id = 0;
  CellId minus_id = 0;
  FaceId face_id = 0;
};

/// Cells tiling the window, the maximal-polytope ledger and the ordered event
/// log. The root cell (the whole window) always has id 0.
struct TessellationState {
  ConvexPolytope window;
  double time = 0.0;
  std::vector<CellRecord> cells;
  std::vector<MaximalPolytopeRecord> ledger;
  std::vector<SplitEvent> events;
  CellId next_cell_id = 1;

  int dim() const { return window.dim(); }
  static TessellationState initial(const ConvexPolytope& window);
};

/// What a split looked like, for observers that need the parent cell.
struct SplitObservation {
  double time = 0.0;
  const ConvexPolytope* parent = nullptr;
  const MaximalPolytopeRecord* face = nullptr;
  /// d=2 only: labels of the parent's edges hit by the two face endpoints.
  std::array<Label, 2> endpoint_labels{kBoundaryLabel, kBoundaryLabel};
};

struct EngineOptions {
  std::size_t max_cells = 10'000'000;
  /// Called after every split.
  std::function<void(const SplitObservation&)> on_split;
};

/// Event-driven local STIT process: competing exponential clocks with rates
/// Λ([z]), one global clock of rate Σ Λ([z]).
class StitSimulator {
 public:
  StitSimulator(const ConvexPolytope& window, HyperplaneMeasure measure, EngineOptions options = {});
  /// Continues from an existing state (memorylessness makes this exact).
  StitSimulator(TessellationState state, HyperplaneMeasure measure, EngineOptions options = {});

  /// Performs the next split if it happens before t_limit and returns true;
  /// otherwise sets the clock to t_limit and returns false.
  bool step(double t_limit, Rng& rng);
  void advance_to(double t_end, Rng& rng);

  const TessellationState& state() const { return state_; }
  TessellationState take() && { return std::move(state_); }
  double total_rate() const;
  double cell_rate(std::size_t slot) const { return rates_[slot]; }
  const HyperplaneMeasure& measure() const { return measure_; }

 private:
  void rebuild_rates();
  void set_rate(std::size_t slot, double rate);
  std::size_t pick_slot(double u) const;

  TessellationState state_;
  HyperplaneMeasure measure_;
  EngineOptions options_;
  std::vector<double> rates_;
  std::vector<double> tree_;  // Fenwick tree over rates_
  std::vector<Hyperplane> window_planes_;
};

/// Runs the local STIT process in W from time 0 to t_end.
TessellationState run_local_stit(const ConvexPolytope& window, const HyperplaneMeasure& measure, double t_end,
                                 Rng& rng, EngineOptions options = {});

/// Rebuilds a state from its window and event log.
TessellationState replay(const ConvexPolytope& window, const std::vector<SplitEvent>& events, double time);

/// Points where the segment [a, b] crosses the union of ledger faces, ordered
/// from a to b and deduplicated.
std::vector<Vec> line_section(const TessellationState& state, const Vec& a, const Vec& b);

/// y ∧ W': cells and faces clipped to W' with fresh ids.
TessellationState restrict(const TessellationState& state, const ConvexPolytope& sub_window);

/// Iteration: cell i of `state` is replaced by fresh[i] ∧ z_i. Fresh birth
/// times are shifted by state.time.
TessellationState iterate(const TessellationState& state, const std::vector<TessellationState>& fresh);

/// Spatial dilation by factor c about the origin; times unchanged.
TessellationState rescale(const TessellationState& state, double factor);

struct TypicalSegment {
  double birth_time = 0.0;
  double length = 0.0;
  std::size_t internal_vertices = 0;
};

/// Minus-sampled maximal segments (d=2): midpoint in `inner`, not clipped by
/// the window.
std::vector<TypicalSegment> extract_typical_segments_2d(const TessellationState& state,
                                                        const ConvexPolytope& inner);

struct SummaryStatistics {
  std::size_t cell_count = 0;
  double total_face_measure = 0.0;
  std::vector<std::size_t> chord_counts;
};

/// Statistics of the restriction of `state` to `region`; chord counts along
/// the given probe segments (which must lie in the region).
SummaryStatistics summary_statistics(const TessellationState& state, const ConvexPolytope& region,
                                     const std::vector<Segment>& probes = {});

/// Midpoint minus-sampling window: `window` shrunk by `margin` on every side
/// (boxes only).
ConvexPolytope inner_box(const ConvexPolytope& window, double margin);

}  // namespace stitlab
