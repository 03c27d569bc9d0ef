#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stitlab {

/// Outcome of one statistical check.
struct TestReport {
  std::string name;
  std::string statistic_name;
  double statistic = 0.0;
  std::optional<double> p_value;
  std::optional<std::pair<double, double>> interval;
  std::vector<std::size_t> sample_sizes;
  std::vector<std::uint64_t> seeds;
  double threshold = 0.01;
  bool pass = false;
  std::string detail;
};

/// Sample mean with a normal-approximation confidence interval.
struct MeanCi {
  double mean = 0.0;
  double sd = 0.0;
  double half_width = 0.0;
  std::size_t n = 0;

  double lo() const { return mean - half_width; }
  double hi() const { return mean + half_width; }
  double standard_error() const;
};

MeanCi mean_ci(std::span<const double> xs, double level = 0.95);
bool intervals_overlap(const MeanCi& a, const MeanCi& b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::size_t bins = 0;
};

/// Goodness of fit of integer-valued samples to probabilities p[0..K-1]; the
/// mass 1 - sum(p) is assigned to the bin {n >= K}. Adjacent cells are pooled
/// until every expected count is at least `min_expected`.
ChiSquareResult chi_square_discrete(std::span<const std::uint64_t> samples, std::span<const double> probabilities,
                                    double min_expected = 5.0);

/// Pearson test against uniform bins of a continuous CDF (used for categorical
/// checks with explicit cell probabilities).
ChiSquareResult chi_square_categories(std::span<const double> observed, std::span<const double> probabilities);

struct MannWhitneyResult {
  double z = 0.0;
  double p_value = 1.0;
};

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b);

struct DispersionResult {
  double index = 0.0;  // sample variance / sample mean
  double z = 0.0;
  double p_value = 1.0;
  double mean = 0.0;
};

/// Index-of-dispersion z-test of the Poisson hypothesis.
DispersionResult dispersion_test(std::span<const std::uint64_t> counts);

inline constexpr std::size_t kDefaultMinSamples = 1000;

/// KS test of last birth times against (s/t)^{d-j}.
TestReport gof_birth_times(std::span<const double> last_birth_times, int d, int j, double t, double alpha = 0.01,
                           std::size_t min_samples = kDefaultMinSamples);

/// Chi-square test of internal-vertex counts against the p1j table.
TestReport gof_internal_vertices(std::span<const std::uint64_t> counts, int d, int j, double alpha = 0.01,
                                 std::size_t min_samples = kDefaultMinSamples);

/// Two-sample KS test; passes if p > alpha.
TestReport two_sample(std::span<const double> a, std::span<const double> b, double alpha = 0.01,
                      std::size_t min_samples = 2);

/// Dispersion test plus the relative deviation of the sample mean from `mean`.
TestReport poisson_dispersion(std::span<const std::uint64_t> counts, double mean, double alpha = 0.01,
                              std::size_t min_samples = kDefaultMinSamples);

}  // namespace stitlab
