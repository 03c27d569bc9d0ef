#include <doctest.h>

#include "stitlab/error.hpp"
#include "stitlab/mecke.hpp"

using namespace stitlab;

namespace {

ConvexPolytope box2(double lo, double hi) { return ConvexPolytope::box(Vec(lo, lo, 0), Vec(hi, hi, 0), 2); }

MeckeOptions options(std::size_t reps, double horizon) {
  MeckeOptions o;
  o.replications = reps;
  o.seed = 77;
  o.s_grid = uniform_grid(horizon, 21);
  return o;
}

}  // namespace

TEST_CASE("vanishing functionals") {
  const HyperplaneMeasure m(DirectionalDistribution::axis_parallel(2));
  const auto zero = MeckeFunctional::simple(1.0, box2(2, 6), [](double) { return 1.0; }, [](double) { return 0.0; });
  CHECK(mecke_lhs(zero, box2(0, 8), m, options(20, 1.0)).mean == 0.0);
  CHECK(mecke_rhs(zero, box2(0, 8), m, options(20, 1.0)).mean == 0.0);

  // long before the first split of a cell small enough to fit the inner window
  const auto early = MeckeFunctional::simple(1e-4, box2(2, 6), [](double) { return 1.0; }, [](double v) { return v; });
  CHECK(mecke_lhs(early, box2(0, 8), m, options(50, 1e-4)).mean <= 1e-2);
  CHECK(mecke_rhs(early, box2(0, 8), m, options(50, 1e-4)).mean <= 1e-2);
}

TEST_CASE("both sides agree on a small window") {
  const HyperplaneMeasure m(DirectionalDistribution::isotropic(2));
  const auto w = box2(0, 8);
  const auto g = MeckeFunctional::simple(1.5, box2(2, 6), [](double s) { return s; }, [](double v) { return v; });
  const auto l = mecke_lhs(g, w, m, options(300, 1.5));
  const auto r = mecke_rhs(g, w, m, options(300, 1.5));
  CHECK(l.mean > 0.0);
  CHECK(intervals_overlap(l, r));

  const auto nested = MeckeFunctional::nested(1.5, box2(2, 6), 0);
  const auto ln = mecke_lhs(nested, w, m, options(300, 1.5));
  const auto rn = mecke_rhs(nested, w, m, options(300, 1.5));
  CHECK(ln.mean > 0.0);
  CHECK(intervals_overlap(ln, rn));
}

TEST_CASE("configuration errors") {
  const HyperplaneMeasure m(DirectionalDistribution::axis_parallel(2));
  const auto g = MeckeFunctional::nested(1.0, box2(2, 12), 0);
  CHECK_THROWS_AS(mecke_lhs(g, box2(0, 8), m, options(2, 1.0)), Error);
  auto o = options(2, 1.0);
  o.s_grid = {0.0, 2.0};
  CHECK_THROWS_AS(mecke_rhs(MeckeFunctional::nested(1.0, box2(2, 6), 0), box2(0, 8), m, o), Error);
}
