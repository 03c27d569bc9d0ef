#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stitlab/geometry.hpp"
#include "stitlab/hyperplane_measure.hpp"
#include "stitlab/stats.hpp"

namespace stitlab {

/// Functional g summed over the birth-time-marked maximal polytopes born up to
/// the horizon. Only faces whose parent cell lies in `inner` contribute.
struct MeckeFunctional {
  enum class Kind { Simple, Nested };

  Kind kind = Kind::Simple;
  double horizon = 1.0;
  ConvexPolytope inner;
  /// Simple: g = phi(s) * psi(V1(p)) * 1{center(p) in region}.
  std::function<double(double)> phi;
  std::function<double(double)> psi;
  std::optional<ConvexPolytope> region;
  /// Nested (d=2): g = 1{p carries exactly `vertex_count` internal vertices at
  /// the horizon}.
  std::size_t vertex_count = 0;

  static MeckeFunctional simple(double horizon, ConvexPolytope inner, std::function<double(double)> phi,
                                std::function<double(double)> psi, std::optional<ConvexPolytope> region = {});
  static MeckeFunctional nested(double horizon, ConvexPolytope inner, std::size_t vertex_count = 0);
};

struct MeckeOptions {
  std::size_t replications = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Right-hand side only: quadrature nodes on [0, horizon] and hyperplane
  /// draws per cell and node.
  std::vector<double> s_grid;
  std::size_t inner_mc = 1;
};

/// Evenly spaced nodes 0 = s_0 < ... < s_{n-1} = horizon.
std::vector<double> uniform_grid(double horizon, std::size_t nodes);

/// Direct estimate: mean over replications of the sum of g over the ledger.
MeanCi mecke_lhs(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure,
                 const MeckeOptions& options);

/// Integral side: for each node s, sum over cells z of Y_s inside `inner` of
/// Λ([z]) times a Monte Carlo average over h ~ Λ_z of g evaluated on z ∩ h;
/// the nested variant continues z ∩ h+ and z ∩ h- independently up to the
/// horizon. Nodes are combined by the trapezoid rule.
MeanCi mecke_rhs(const MeckeFunctional& g, const ConvexPolytope& window, const HyperplaneMeasure& measure,
                 const MeckeOptions& options);

/// Per-replication values behind the estimates, for reporting.
std::vector<double> mecke_lhs_samples(const MeckeFunctional& g, const ConvexPolytope& window,
                                      const HyperplaneMeasure& measure, const MeckeOptions& options);
std::vector<double> mecke_rhs_samples(const MeckeFunctional& g, const ConvexPolytope& window,
                                      const HyperplaneMeasure& measure, const MeckeOptions& options);

}  // namespace stitlab
