#include <doctest.h>

#include <cmath>
#include <limits>

#include "stitlab/analytics.hpp"
#include "stitlab/error.hpp"
#include "stitlab/hyperplane_measure.hpp"

using namespace stitlab;

namespace {

// Composite Simpson on 2 ∫_0^1 s^2 (2-2s)^n / (2-s)^{n+1} ds.
double p10_d2_oracle(int n) {
  const int m = 20000;
  auto f = [&](double s) { return 2 * s * s * std::pow(2 - 2 * s, n) / std::pow(2 - s, n + 1); };
  double acc = f(0) + f(1);
  for (int i = 1; i < m; ++i) acc += (i % 2 ? 4 : 2) * f(double(i) / m);
  return acc / (3.0 * m);
}

}  // namespace

TEST_CASE("golden constants") {
  const double ln2 = std::log(2.0);
  const double ln3 = std::log(3.0);
  CHECK(std::abs(p1j(0, {3, 1}).value - (5 + 18 * ln2 - 63.0 / 4 * ln3)) <= 1e-8);
  CHECK(std::abs(p1j(1, {3, 1}).value - (28 + 90 * ln2 - 657.0 / 8 * ln3)) <= 1e-8);
  CHECK(std::abs(p1j(0, {2, 0}).value - (8 * ln2 - 5)) <= 1e-8);
}

TEST_CASE("d=2 table matches the one-dimensional oracle") {
  for (int n = 0; n <= 8; ++n) CHECK(std::abs(p1j(n, {2, 0}).value - p10_d2_oracle(n)) <= 1e-9);
}

TEST_CASE("probabilities sum to one") {
  double sum = 0.0;
  for (const auto& e : p1j_table(200, {3, 0})) sum += e.value;
  // The tail decays like n^-3, so the first 201 terms leave about 1.8e-5;
  // reference value from a 30-digit double integral of E[r^201].
  CHECK(std::abs(sum - 0.999982215333582) <= 1e-8);
  // with the remainder summed in closed form the total is 1
  const auto m = mean_from_table({3, 0}, 200);
  CHECK(std::abs(m.total - 2.0) <= 1e-6);
  double d2 = 0.0;
  for (const auto& e : p1j_table(400, {2, 0})) d2 += e.value;
  CHECK(d2 <= 1.0 + 1e-8);
  CHECK(d2 >= 1.0 - 1e-4);
}

TEST_CASE("horizon independence and tolerance self-consistency") {
  for (unsigned n : {0u, 2u, 5u}) {
    const auto a = p1j(n, {4, 1, 1.0});
    const auto b = p1j(n, {4, 1, 5.0});
    CHECK(std::abs(a.value - b.value) <= 1e-8);
    DistributionSpec tight{4, 1, 1.0};
    tight.quadrature.abs_tol /= 2;
    tight.quadrature.rel_tol /= 2;
    const auto c = p1j(n, tight);
    CHECK(std::abs(a.value - c.value) <= std::max(a.error, 1e-12) + 1e-12);
  }
}

TEST_CASE("closed-form means") {
  CHECK(mean_internal_vertices(2, 0) == 2.0);
  CHECK(mean_internal_vertices(3, 0) == 2.0);
  CHECK(mean_internal_vertices(3, 1) == 7.0);
  CHECK(mean_internal_vertices(4, 1) == 6.0);
  CHECK(mean_internal_vertices(5, 1) == doctest::Approx(19.0 / 3.0));
  CHECK(mean_internal_vertices(6, 1) == 7.0);
  CHECK(mean_internal_vertices(2, 1) == std::numeric_limits<double>::infinity());
}

TEST_CASE("moment sums agree with closed forms") {
  for (auto [d, j] : {std::pair{2, 0}, {3, 0}, {3, 1}, {4, 1}}) {
    const auto m = mean_from_table({d, j}, 30);
    CHECK(std::abs(m.total - mean_internal_vertices(d, j)) <= 1e-4);
  }
  CHECK(mean_from_table({2, 1}, 10).total == std::numeric_limits<double>::infinity());
}

TEST_CASE("birth-time density") {
  const double s[] = {0.5};
  CHECK(birth_time_density(s, 2, 1, 0, 1.0) == doctest::Approx(1.0));
  CHECK(last_birth_cdf(0.5, 2, 0, 1.0) == doctest::Approx(0.25));
  const double unordered[] = {0.6, 0.3};
  CHECK(birth_time_density(unordered, 3, 1, 1, 1.0) == 0.0);
  // normalization over the simplex 0 < s1 < s2 < 1 (density 2 s2^0 ... )
  const int m = 2000;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double s2 = (i + 0.5) / m;
    const double pt[] = {0.5 * s2, s2};
    acc += birth_time_density(pt, 3, 1, 1, 1.0) * s2 / m;  // inner integral over s1 is exact
  }
  CHECK(std::abs(acc - 1.0) <= 1e-10);
}

TEST_CASE("intensity scaling") {
  CHECK(intensity_scaling(2, 1, 0, 1.0).exponent == 2);
  CHECK(intensity_scaling(3, 2, 2, 1.0).exponent == 1);
  const HyperplaneMeasure axis(DirectionalDistribution::axis_parallel(2));
  const auto s = intensity_scaling(2, 1, 0, 1.0, &axis);
  REQUIRE(s.predicted_intensity);
  CHECK(*s.predicted_intensity == doctest::Approx(0.25));
  CHECK(segment_intensity_2d(axis, 0, 2.0) == doctest::Approx(1.0));
  CHECK(segment_intensity_2d(axis, 1, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(p1j(0, {1, 0}), Error);
  CHECK_THROWS_AS(p1j(0, {3, 2}), Error);
  DistributionSpec bad{3, 0};
  bad.quadrature.abs_tol = 0.0;
  CHECK_THROWS_AS(p1j(0, bad), Error);
  DistributionSpec starved{3, 1};
  starved.quadrature.max_subdivisions = 1;
  starved.quadrature.abs_tol = 1e-15;
  starved.quadrature.rel_tol = 1e-15;
  try {
    p1j(40, starved);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::QuadratureFailure);
  }
}
