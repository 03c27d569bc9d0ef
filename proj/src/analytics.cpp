#include "stitlab/analytics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "stitlab/error.hpp"
#include "stitlab/hyperplane_measure.hpp"

namespace stitlab {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void check_spec(const DistributionSpec& spec) {
  if (spec.d < 2) throw Error(Errc::BadDimension, "dimension must be at least 2");
  if (spec.j != 0 && spec.j != 1) throw Error(Errc::BadDimension, "weight index must be 0 or 1");
  if (!(spec.t > 0.0)) throw Error(Errc::InvalidArgument, "horizon must be positive");
  const auto& q = spec.quadrature;
  if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0) || q.max_subdivisions == 0)
    throw Error(Errc::InvalidArgument, "quadrature tolerances must be positive");
}

// Integrates g(s, sigma) against the law of the birth-time configuration of
// the typical V_j-weighted maximal segment, where s is the last birth time and
// sigma the sum of the other d-2. The last birth time has density
// (d-j) s^{d-j-1} / t^{d-j}; given s, sigma / s is Irwin–Hall(d-2).
template <class G>
Estimate integrate_over_birth_times(const DistributionSpec& spec, G&& g) {
  const int d = spec.d;
  const int m = d - 2;
  const double t = spec.t;
  const auto& q = spec.quadrature;
  const double inner_tol = q.rel_tol * 1e-2;
  double worst_inner = 0.0;

  auto inner = [&](double s) {
    if (m == 0) return g(s, 0.0);
    double total = 0.0;
    for (int piece = 0; piece < m; ++piece) {
      double err = 0.0;
      total += Rule::integrate([&](double x) { return irwin_hall_density(m, x) * g(s, s * x); },
                               static_cast<double>(piece), piece + 1.0, q.max_subdivisions, inner_tol, &err);
      worst_inner = std::max(worst_inner, err);
    }
    return total;
  };
  const double norm = (d - spec.j) / std::pow(t, d - spec.j);
  auto outer = [&](double s) { return norm * std::pow(s, d - spec.j - 1) * inner(s); };

  double err = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(outer, 0.0, t, q.max_subdivisions, q.rel_tol, &err, &l1);
  const double total_err = err + worst_inner * (d - spec.j);
  if (!std::isfinite(value) || total_err > std::max(q.abs_tol, q.rel_tol * std::abs(value)))
    throw Error(Errc::QuadratureFailure, "error estimate " + std::to_string(total_err) + " exceeds tolerance");
  return {value, total_err};
}

}  // namespace

double irwin_hall_density(int m, double x) {
  if (m < 1) throw Error(Errc::InvalidArgument, "Irwin–Hall order must be positive");
  if (x < 0.0 || x > m) return 0.0;
  double sum = 0.0;
  const int top = std::min(m, static_cast<int>(std::floor(x)));
  for (int k = 0; k <= top; ++k) {
    const double term = binomial(m, k) * std::pow(x - k, m - 1);
    sum += (k % 2 == 0) ? term : -term;
  }
  return std::max(0.0, sum / factorial(m - 1));
}

Estimate p1j(unsigned n, const DistributionSpec& spec) {
  check_spec(spec);
  const int d = spec.d;
  const double t = spec.t;
  const double nd = static_cast<double>(n);
  // Given the birth times, the length is Exp(s) (Gamma(2, s) when weighted) and
  // the count is Poisson(length * a); mixing gives the expressions below in
  // terms of r = a / (a + s).
  auto g = [&](double s, double sigma) {
    if (s <= 0.0) return 0.0;
    const double a = d * t - 2.0 * s - sigma;
    const double r = a / (a + s);
    const double rn = n == 0 ? 1.0 : std::pow(r, nd);
    if (spec.j == 0) return (1.0 - r) * rn;
    return (nd + 1.0) * (1.0 - r) * (1.0 - r) * rn;
  };
  return integrate_over_birth_times(spec, g);
}

std::vector<Estimate> p1j_table(unsigned n_max, const DistributionSpec& spec) {
  std::vector<Estimate> out;
  out.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) out.push_back(p1j(n, spec));
  return out;
}

double mean_internal_vertices(int d, int j) {
  if (d < 2) throw Error(Errc::BadDimension, "dimension must be at least 2");
  if (j == 0) return 0.5 * (d * d - d + 2.0) / (d - 1.0);
  if (j == 1) return d == 2 ? std::numeric_limits<double>::infinity() : (d * d - 2.0 * d + 4.0) / (d - 2.0);
  throw Error(Errc::BadDimension, "weight index must be 0 or 1");
}

MomentSum mean_from_table(const DistributionSpec& spec, unsigned n_head) {
  check_spec(spec);
  MomentSum out;
  out.n_head = n_head;
  for (unsigned n = 1; n <= n_head; ++n) {
    const auto e = p1j(n, spec);
    out.head += n * e.value;
    out.error += n * e.error;
  }
  const int d = spec.d;
  const double t = spec.t;
  const double M = n_head + 1.0;
  // sum_{n >= M} n P(N = n | s, sigma) in closed form.
  auto tail = [&](double s, double sigma) {
    if (s <= 0.0) return 0.0;
    const double a = d * t - 2.0 * s - sigma;
    const double r = a / (a + s);
    const double one_minus_r = s / (a + s);
    const double rM = std::pow(r, M);
    if (spec.j == 0) return rM * (M + r / one_minus_r);
    return M * (M + 1.0) * rM * one_minus_r + 2.0 * (M + 1.0) * rM * r + 2.0 * rM * r * r / one_minus_r;
  };
  if (spec.j == 1 && d == 2) {
    out.tail = std::numeric_limits<double>::infinity();
  } else {
    const auto e = integrate_over_birth_times(spec, tail);
    out.tail = e.value;
    out.error += e.error;
  }
  out.total = out.head + out.tail;
  return out;
}

double birth_time_density(std::span<const double> s, int d, int k, int j, double t) {
  if (d < 2 || k < 0 || k > d - 1 || j < 0 || j > k) throw Error(Errc::BadDimension, "need 0 <= j <= k <= d-1");
  if (s.size() != static_cast<std::size_t>(d - k)) throw Error(Errc::BadDimension, "need d-k birth times");
  double prev = 0.0;
  for (double v : s) {
    if (!(v > prev)) return 0.0;
    prev = v;
  }
  if (!(prev < t)) return 0.0;
  return (d - j) * factorial(d - k - 1) * std::pow(s.back(), k - j) / std::pow(t, d - j);
}

double last_birth_cdf(double s, int d, int j, double t) {
  if (d < 2 || j < 0 || j > d - 1) throw Error(Errc::BadDimension, "need 0 <= j <= d-1");
  if (s <= 0.0) return 0.0;
  if (s >= t) return 1.0;
  return std::pow(s / t, d - j);
}

double segment_intensity_2d(const HyperplaneMeasure& measure, int j, double t) {
  if (measure.dim() != 2) throw Error(Errc::BadDimension, "planar measure required");
  // Lines of the measure hitting the unit square have total chord length 1.
  if (j == 1) return t;
  if (j != 0) throw Error(Errc::BadDimension, "weight index must be 0 or 1");
  double mixed = 0.0;
  if (measure.directional().is_isotropic()) {
    mixed = 2.0 / std::numbers::pi;
  } else {
    for (const auto& a : measure.directional().atoms()) {
      const Vec along(-a.normal.y(), a.normal.x(), 0.0);
      mixed += a.weight * measure.line_hit_rate(along);
    }
  }
  return 0.5 * t * t * mixed;
}

IntensityScaling intensity_scaling(int d, int k, int j, double t, const HyperplaneMeasure* measure) {
  if (d < 2 || k < 0 || k > d - 1 || j < 0 || j > k) throw Error(Errc::BadDimension, "need 0 <= j <= k <= d-1");
  IntensityScaling out;
  out.exponent = d - j;
  if (measure && d == 2 && k == 1) out.predicted_intensity = segment_intensity_2d(*measure, j, t);
  return out;
}

}  // namespace stitlab
