#include <doctest.h>

#include <cmath>
#include <random>

#include "stitlab/error.hpp"
#include "stitlab/random.hpp"
#include "stitlab/stats.hpp"

using namespace stitlab;

TEST_CASE("Kolmogorov survival reference values") {
  // P(K > 1.36) ≈ 0.0494, P(K > 1.63) ≈ 0.0098
  CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.0494).epsilon(0.01));
  CHECK(kolmogorov_survival(1.628) == doctest::Approx(0.0100).epsilon(0.02));
  CHECK(kolmogorov_survival(0.0) == 1.0);
}

TEST_CASE("KS is calibrated under the null") {
  int pass = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng = make_stream(3, "ks-null", rep);
    std::vector<double> xs(2000);
    for (auto& x : xs) x = uniform01(rng);
    pass += ks_one_sample(xs, [](double x) { return x; }).p_value > 0.01;
  }
  CHECK(pass >= 95);
}

TEST_CASE("chi-square is calibrated under the null") {
  const std::vector<double> p{0.5, 0.25, 0.125, 0.0625};
  int pass = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng = make_stream(4, "chi-null", rep);
    std::geometric_distribution<std::uint64_t> geo(0.5);
    std::vector<std::uint64_t> xs(2000);
    for (auto& x : xs) x = geo(rng);
    pass += chi_square_discrete(xs, p).p_value > 0.01;
  }
  CHECK(pass >= 95);
}

TEST_CASE("tests detect a shift") {
  Rng rng(1);
  std::vector<double> a(3000);
  std::vector<double> b(3000);
  for (auto& x : a) x = uniform01(rng);
  for (auto& x : b) x = uniform01(rng) + 0.1;
  CHECK(ks_two_sample(a, b).p_value < 1e-6);
  CHECK(mann_whitney(a, b).p_value < 1e-6);
  CHECK(ks_one_sample(b, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value < 1e-6);
}

TEST_CASE("dispersion test") {
  Rng rng(2);
  std::poisson_distribution<std::uint64_t> pois(3.0);
  std::vector<std::uint64_t> xs(5000);
  for (auto& x : xs) x = pois(rng);
  const auto r = poisson_dispersion(xs, 3.0);
  CHECK(r.pass);
  std::vector<std::uint64_t> over;
  for (int i = 0; i < 5000; ++i) over.push_back(i % 2 ? 0 : 6);
  CHECK_FALSE(poisson_dispersion(over, 3.0).pass);
}

TEST_CASE("minimum sample sizes") {
  std::vector<double> small(10, 0.5);
  try {
    gof_birth_times(small, 2, 0, 1.0);
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientSamples);
  }
}

TEST_CASE("mean confidence interval") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  const auto ci = mean_ci(xs);
  CHECK(ci.mean == doctest::Approx(3.0));
  CHECK(ci.sd == doctest::Approx(std::sqrt(2.5)));
  CHECK(ci.half_width == doctest::Approx(1.959964 * std::sqrt(2.5 / 5)).epsilon(1e-5));
}
