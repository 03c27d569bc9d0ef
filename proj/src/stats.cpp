#include "stitlab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "stitlab/analytics.hpp"
#include "stitlab/error.hpp"

namespace stitlab {

namespace {

double normal_two_sided(double z) {
  const boost::math::normal_distribution<> n01;
  return 2.0 * boost::math::cdf(boost::math::complement(n01, std::abs(z)));
}

double chi_square_survival(double x, int dof) {
  if (dof < 1) return 1.0;
  const boost::math::chi_squared_distribution<> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, x)));
}

double kolmogorov_p(double d, double n_eff) {
  const double sn = std::sqrt(n_eff);
  return kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
}

void require_samples(std::size_t n, std::size_t min_samples, const std::string& what) {
  if (n < min_samples)
    throw Error(Errc::InsufficientSamples,
                what + ": " + std::to_string(n) + " samples, need " + std::to_string(min_samples));
}

}  // namespace

double MeanCi::standard_error() const { return n > 0 ? sd / std::sqrt(static_cast<double>(n)) : 0.0; }

MeanCi mean_ci(std::span<const double> xs, double level) {
  MeanCi out;
  out.n = xs.size();
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / (xs.size() - 1));
  }
  const boost::math::normal_distribution<> n01;
  const double z = boost::math::quantile(n01, 0.5 + 0.5 * level);
  out.half_width = z * out.standard_error();
  return out;
}

bool intervals_overlap(const MeanCi& a, const MeanCi& b) { return a.lo() <= b.hi() && b.lo() <= a.hi(); }

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw Error(Errc::InsufficientSamples, "KS test needs samples");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_p(d, n)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::InsufficientSamples, "KS test needs samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return {d, kolmogorov_p(d, na * nb / (na + nb))};
}

ChiSquareResult chi_square_discrete(std::span<const std::uint64_t> samples, std::span<const double> probabilities,
                                    double min_expected) {
  if (samples.empty()) throw Error(Errc::InsufficientSamples, "chi-square test needs samples");
  const double n = static_cast<double>(samples.size());
  const std::size_t k = probabilities.size();
  std::vector<double> observed(k + 1, 0.0);
  for (auto s : samples) observed[std::min<std::size_t>(s, k)] += 1.0;
  std::vector<double> expected(k + 1, 0.0);
  double covered = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    expected[i] = n * probabilities[i];
    covered += probabilities[i];
  }
  expected[k] = n * std::max(0.0, 1.0 - covered);

  std::vector<double> obs_bins;
  std::vector<double> exp_bins;
  double o_acc = 0.0;
  double e_acc = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    o_acc += observed[i];
    e_acc += expected[i];
    if (e_acc >= min_expected) {
      obs_bins.push_back(o_acc);
      exp_bins.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_bins.empty()) {
      obs_bins.push_back(o_acc);
      exp_bins.push_back(e_acc);
    } else {
      obs_bins.back() += o_acc;
      exp_bins.back() += e_acc;
    }
  }
  ChiSquareResult r;
  r.bins = obs_bins.size();
  for (std::size_t i = 0; i < obs_bins.size(); ++i) {
    const double diff = obs_bins[i] - exp_bins[i];
    r.statistic += exp_bins[i] > 0.0 ? diff * diff / exp_bins[i] : (obs_bins[i] > 0.0 ? HUGE_VAL : 0.0);
  }
  r.dof = static_cast<int>(r.bins) - 1;
  r.p_value = chi_square_survival(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_categories(std::span<const double> observed, std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty())
    throw Error(Errc::InvalidArgument, "observed and probabilities must have equal nonzero size");
  const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  ChiSquareResult r;
  r.bins = observed.size();
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probabilities[i];
    r.statistic += (observed[i] - e) * (observed[i] - e) / e;
  }
  r.dof = static_cast<int>(r.bins) - 1;
  r.p_value = chi_square_survival(r.statistic, r.dof);
  return r;
}

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::InsufficientSamples, "Mann-Whitney test needs samples");
  std::vector<std::pair<double, int>> all;
  all.reserve(a.size() + b.size());
  for (double x : a) all.emplace_back(x, 0);
  for (double x : b) all.emplace_back(x, 1);
  std::sort(all.begin(), all.end());
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n = n1 + n2;
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double avg_rank = 0.5 * (i + 1 + j);
    const double ties = static_cast<double>(j - i);
    tie_term += ties * ties * ties - ties;
    for (std::size_t k = i; k < j; ++k)
      if (all[k].second == 0) rank_sum_a += avg_rank;
    i = j;
  }
  const double u = rank_sum_a - n1 * (n1 + 1) / 2.0;
  const double mu = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)));
  MannWhitneyResult r;
  r.z = var > 0.0 ? (u - mu) / std::sqrt(var) : 0.0;
  r.p_value = var > 0.0 ? normal_two_sided(r.z) : 1.0;
  return r;
}

DispersionResult dispersion_test(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw Error(Errc::InsufficientSamples, "dispersion test needs samples");
  const double n = static_cast<double>(counts.size());
  double mean = 0.0;
  for (auto c : counts) mean += static_cast<double>(c);
  mean /= n;
  double ss = 0.0;
  for (auto c : counts) ss += (c - mean) * (c - mean);
  DispersionResult r;
  r.mean = mean;
  if (mean <= 0.0) return r;
  const double stat = ss / mean;  // ~ chi^2_{n-1} under the Poisson hypothesis
  r.index = ss / ((n - 1.0) * mean);
  r.z = (stat - (n - 1.0)) / std::sqrt(2.0 * (n - 1.0));
  r.p_value = normal_two_sided(r.z);
  return r;
}

TestReport gof_birth_times(std::span<const double> last_birth_times, int d, int j, double t, double alpha,
                           std::size_t min_samples) {
  require_samples(last_birth_times.size(), min_samples, "gof_birth_times");
  const auto ks = ks_one_sample({last_birth_times.begin(), last_birth_times.end()},
                                [&](double s) { return last_birth_cdf(s, d, j, t); });
  TestReport r;
  r.name = "birth-time law d=" + std::to_string(d) + " j=" + std::to_string(j);
  r.statistic_name = "KS D";
  r.statistic = ks.statistic;
  r.p_value = ks.p_value;
  r.sample_sizes = {last_birth_times.size()};
  r.threshold = alpha;
  r.pass = ks.p_value > alpha;
  return r;
}

TestReport gof_internal_vertices(std::span<const std::uint64_t> counts, int d, int j, double alpha,
                                 std::size_t min_samples) {
  require_samples(counts.size(), min_samples, "gof_internal_vertices");
  // Table long enough that the pooled tail bin is the only approximation.
  const std::uint64_t max_seen = *std::max_element(counts.begin(), counts.end());
  const unsigned n_max = static_cast<unsigned>(std::min<std::uint64_t>(max_seen + 1, 120));
  std::vector<double> probs;
  for (const auto& e : p1j_table(n_max, DistributionSpec{d, j, 1.0, {}})) probs.push_back(e.value);
  const auto chi = chi_square_discrete(counts, probs);
  TestReport r;
  r.name = "internal vertices d=" + std::to_string(d) + " j=" + std::to_string(j);
  r.statistic_name = "chi2";
  r.statistic = chi.statistic;
  r.p_value = chi.p_value;
  r.sample_sizes = {counts.size()};
  r.threshold = alpha;
  r.pass = chi.p_value > alpha;
  r.detail = std::to_string(chi.bins) + " bins, dof " + std::to_string(chi.dof);
  return r;
}

TestReport two_sample(std::span<const double> a, std::span<const double> b, double alpha,
                      std::size_t min_samples) {
  require_samples(std::min(a.size(), b.size()), min_samples, "two_sample");
  const auto ks = ks_two_sample({a.begin(), a.end()}, {b.begin(), b.end()});
  const auto mw = mann_whitney(a, b);
  TestReport r;
  r.name = "two-sample";
  r.statistic_name = "KS D";
  r.statistic = ks.statistic;
  r.p_value = ks.p_value;
  r.sample_sizes = {a.size(), b.size()};
  r.threshold = alpha;
  r.pass = ks.p_value > alpha;
  r.detail = "Mann-Whitney z=" + std::to_string(mw.z) + " p=" + std::to_string(mw.p_value);
  return r;
}

TestReport poisson_dispersion(std::span<const std::uint64_t> counts, double mean, double alpha,
                              std::size_t min_samples) {
  require_samples(counts.size(), min_samples, "poisson_dispersion");
  const auto disp = dispersion_test(counts);
  TestReport r;
  r.name = "Poisson dispersion";
  r.statistic_name = "dispersion z";
  r.statistic = disp.z;
  r.p_value = disp.p_value;
  r.sample_sizes = {counts.size()};
  r.threshold = alpha;
  r.pass = disp.p_value > alpha;
  r.detail = "index " + std::to_string(disp.index) + ", mean " + std::to_string(disp.mean) + " vs " +
             std::to_string(mean) + " (rel. dev. " + std::to_string(std::abs(disp.mean - mean) / mean) + ")";
  return r;
}

}  // namespace stitlab
