#pragma once

#include <optional>
#include <span>
#include <vector>

namespace stitlab {

class HyperplaneMeasure;

struct QuadratureOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  /// Maximum bisection depth of the adaptive Gauss–Kronrod rule.
  unsigned max_subdivisions = 18;
};

struct DistributionSpec {
  int d = 2;
  int j = 0;
  double t = 1.0;
  QuadratureOptions quadrature{};
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Density of the sum of m independent Uniform(0,1) variables (m >= 1).
double irwin_hall_density(int m, double x);

/// Probability that the typical (j=0) or length-weighted (j=1) maximal segment
/// carries exactly n internal vertices. The (d-2) earliest birth times enter
/// only through their sum, which is integrated against the scaled Irwin–Hall
/// density, leaving at most a double integral.
Estimate p1j(unsigned n, const DistributionSpec& spec);

std::vector<Estimate> p1j_table(unsigned n_max, const DistributionSpec& spec);

/// Closed-form mean number of internal vertices; +infinity for (d=2, j=1).
double mean_internal_vertices(int d, int j);

struct MomentSum {
  double head = 0.0;   // sum_{n <= n_head} n p1j(n)
  double tail = 0.0;   // exact series remainder, integrated numerically
  double total = 0.0;
  double error = 0.0;
  unsigned n_head = 0;
};

/// Mean internal-vertex count assembled from the p1j table. The remainder of
/// the series beyond n_head is summed in closed form under the integral, which
/// is required because the tail decays only polynomially in n.
MomentSum mean_from_table(const DistributionSpec& spec, unsigned n_head);

/// Joint density of the ordered birth times (s_1, ..., s_{d-k}) of the typical
/// V_j-weighted maximal k-polytope at time t; zero off the ordered region.
double birth_time_density(std::span<const double> s, int d, int k, int j, double t);

/// CDF of the last birth time: (s/t)^{d-j} on [0, t].
double last_birth_cdf(double s, int d, int j, double t);

struct IntensityScaling {
  /// ϱ_{k,t}^{(j)} = t^{exponent} ϱ_{k,1}^{(j)}.
  int exponent = 0;
  /// Predicted intensity when a closed form is available (d=2, k=1 with a
  /// measure supplied).
  std::optional<double> predicted_intensity;
};

IntensityScaling intensity_scaling(int d, int k, int j, double t, const HyperplaneMeasure* measure = nullptr);

/// Planar maximal-segment intensity: j=0 gives the number of segments per unit
/// area, j=1 the segment length per unit area.
double segment_intensity_2d(const HyperplaneMeasure& measure, int j, double t);

}  // namespace stitlab
