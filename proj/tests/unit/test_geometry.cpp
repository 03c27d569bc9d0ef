#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stitlab/error.hpp"
#include "stitlab/geometry.hpp"
#include "stitlab/random.hpp"

using namespace stitlab;

namespace {

ConvexPolytope unit_square() { return ConvexPolytope::box(Vec(0, 0, 0), Vec(1, 1, 0), 2); }
ConvexPolytope unit_cube() { return ConvexPolytope::box(Vec(0, 0, 0), Vec(1, 1, 1), 3); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Config;
}

// Random convex polygon: sorted angles on an ellipse.
ConvexPolytope random_polygon(Rng& rng) {
  const int n = 3 + static_cast<int>(uniform01(rng) * 8);
  std::vector<double> ang(n);
  for (auto& a : ang) a = uniform(rng, 0.0, 2 * std::numbers::pi);
  std::sort(ang.begin(), ang.end());
  const double rx = uniform(rng, 0.5, 3.0);
  const double ry = uniform(rng, 0.5, 3.0);
  const Vec c(uniform(rng, -5, 5), uniform(rng, -5, 5), 0);
  std::vector<Vec> pts;
  for (double a : ang) pts.push_back(c + Vec(rx * std::cos(a), ry * std::sin(a), 0));
  return ConvexPolytope::polygon(pts);
}

Hyperplane random_cut(const ConvexPolytope& z, Rng& rng) {
  const double th = uniform(rng, 0.0, 2 * std::numbers::pi);
  Vec n(std::cos(th), std::sin(th), 0);
  if (z.dim() == 3) {
    const double cz = uniform(rng, -1.0, 1.0);
    const double r = std::sqrt(1 - cz * cz);
    n = Vec(r * std::cos(th), r * std::sin(th), cz);
  }
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  for (const auto& v : z.vertices()) {
    lo = std::min(lo, v.dot(n));
    hi = std::max(hi, v.dot(n));
  }
  return Hyperplane::make(n, uniform(rng, lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo)), z.dim());
}

}  // namespace

TEST_CASE("hyperplane canonicalization") {
  const auto h = Hyperplane::make(Vec(0, -2, 0), 1.0, 2);
  CHECK(h.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const auto c = h.canonical();
  CHECK(c.is_canonical());
  CHECK(c.normal.y() == doctest::Approx(1.0));
  CHECK(c.offset == doctest::Approx(-0.5));  // {-2y = 1} is {y = -0.5}
  const auto cc = c.canonical();
  CHECK(cc.normal == c.normal);
  CHECK(cc.offset == c.offset);
  // ties: last coordinate zero, decided by the previous one
  const auto t = Hyperplane::make(Vec(-1, 0, 0), 0.5, 2).canonical();
  CHECK(t.normal.x() == doctest::Approx(1.0));
  CHECK(t.offset == doctest::Approx(-0.5));
  CHECK(code_of([] { Hyperplane::make(Vec::Zero(), 0.0, 2); }) == Errc::InvalidArgument);
}

TEST_CASE("split unit square by a vertical line") {
  const auto r = split_polytope(unit_square(), Hyperplane::make(Vec(1, 0, 0), 0.3, 2));
  CHECK(r.minus.measure() == doctest::Approx(0.3));
  CHECK(r.plus.measure() == doctest::Approx(0.7));
  CHECK(r.face.measure() == doctest::Approx(1.0));
  for (const auto& v : r.minus.vertices()) CHECK(v.x() <= 0.3 + 1e-12);
  for (const auto& v : r.plus.vertices()) CHECK(v.x() >= 0.3 - 1e-12);
}

TEST_CASE("split unit square along the diagonal") {
  const auto r = split_polytope(unit_square(), Hyperplane::make(Vec(1, 1, 0), 1.0, 2));
  CHECK(r.minus.measure() == doctest::Approx(0.5));
  CHECK(r.plus.measure() == doctest::Approx(0.5));
  CHECK(r.face.measure() == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.minus.vertices().size() == 3);
  CHECK(r.plus.vertices().size() == 3);
  // the strict policy rejects the same cut: it passes through two vertices
  CHECK(code_of([] {
          split_polytope(unit_square(), Hyperplane::make(Vec(1, 1, 0), 1.0, 2), kBoundaryLabel,
                         CutPolicy::Strict);
        }) == Errc::DegenerateCut);
}

TEST_CASE("split unit cube") {
  const auto r = split_polytope(unit_cube(), Hyperplane::make(Vec(0, 0, 1), 0.5, 3));
  CHECK(r.minus.measure() == doctest::Approx(0.5));
  CHECK(r.plus.measure() == doctest::Approx(0.5));
  CHECK(r.face.measure() == doctest::Approx(1.0));
  CHECK(r.face.vertices.size() == 4);
  CHECK(r.minus.facets().size() == 6);
}

TEST_CASE("split errors") {
  CHECK(code_of([] { split_polytope(unit_square(), Hyperplane::make(Vec(1, 0, 0), 2.0, 2)); }) ==
        Errc::NoIntersection);
  CHECK(code_of([] { split_polytope(unit_square(), Hyperplane::make(Vec(1, 0, 0), 1.0, 2)); }) ==
        Errc::NoIntersection);
  CHECK(code_of([] { split_polytope(unit_square(), Hyperplane::make(Vec(1, 0, 0), 0.5, 3)); }) ==
        Errc::BadDimension);
}

TEST_CASE("split conservation over random polygons and polyhedra") {
  Rng rng(20240601);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto z = random_polygon(rng);
    const auto h = random_cut(z, rng);
    const auto r = split_polytope(z, h);
    worst = std::max(worst, std::abs(z.measure() - r.plus.measure() - r.minus.measure()) / z.measure());
  }
  CHECK(worst <= 1e-9);

  worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    auto z = unit_cube();
    for (int k = 0; k < 3; ++k) {
      auto r = split_polytope(z, random_cut(z, rng));
      z = uniform01(rng) < 0.5 ? r.plus : r.minus;
    }
    const auto r = split_polytope(z, random_cut(z, rng));
    worst = std::max(worst, std::abs(z.measure() - r.plus.measure() - r.minus.measure()) / z.measure());
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("width") {
  CHECK(width(unit_square(), Vec(1, 0, 0)) == doctest::Approx(1.0));
  CHECK(width(unit_square(), Vec(1, 1, 0).normalized()) == doctest::Approx(std::sqrt(2.0)));
  const auto rect = ConvexPolytope::box(Vec(0, 0, 0), Vec(2, 1, 0), 2);
  CHECK(width(rect, Vec(0, 1, 0)) == doctest::Approx(1.0));
  CHECK(width(rect, Vec(0, -1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("width is invariant under rotation") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto z = random_polygon(rng);
    const double th = uniform(rng, 0.0, 2 * std::numbers::pi);
    const double a = uniform(rng, 0.0, 2 * std::numbers::pi);
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    rot.topLeftCorner<2, 2>() << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    const Vec u(std::cos(th), std::sin(th), 0);
    CHECK(width(z.transformed(rot), rot * u) == doctest::Approx(width(z, u)).epsilon(1e-9));
  }
}

TEST_CASE("point on segment interior") {
  const Segment s{Vec(0, 0, 0), Vec(1, 0, 0)};
  CHECK(point_on_segment_interior(Vec(0.5, 0, 0), s, 1e-9));
  CHECK_FALSE(point_on_segment_interior(Vec(1, 0, 0), s, 1e-9));
  CHECK_FALSE(point_on_segment_interior(Vec(0.5, 1e-6, 0), s, 1e-9));
  CHECK(code_of([] { point_on_segment_interior(Vec(0, 0, 0), Segment{}, 1e-9); }) == Errc::ZeroLength);
}

TEST_CASE("polytope basics") {
  const auto sq = unit_square();
  CHECK(sq.measure() == doctest::Approx(1.0));
  CHECK(sq.boundary_measure() == doctest::Approx(4.0));
  CHECK(sq.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.centroid().isApprox(Vec(0.5, 0.5, 0)));
  CHECK(sq.mean_width() == doctest::Approx(4.0 / std::numbers::pi));
  // clockwise input is reoriented
  const auto cw = ConvexPolytope::polygon({Vec(0, 0, 0), Vec(0, 1, 0), Vec(1, 1, 0), Vec(1, 0, 0)});
  CHECK(cw.measure() == doctest::Approx(1.0));
  const auto cube = unit_cube();
  CHECK(cube.measure() == doctest::Approx(1.0));
  CHECK(cube.boundary_measure() == doctest::Approx(6.0));
  CHECK(cube.mean_width() == doctest::Approx(1.5));
  CHECK(cube.contains(Vec(0.5, 0.5, 0.5)));
  CHECK_FALSE(cube.contains(Vec(1.5, 0.5, 0.5)));
  CHECK(sq.scaled(2.0).measure() == doctest::Approx(4.0));
  CHECK(sq.depth(Vec(0.25, 0.5, 0)) == doctest::Approx(0.25));
}

TEST_CASE("intersect and clip_face") {
  const auto a = ConvexPolytope::box(Vec(0, 0, 0), Vec(2, 2, 0), 2);
  const auto b = ConvexPolytope::box(Vec(1, 1, 0), Vec(3, 3, 0), 2);
  const auto c = intersect(a, b);
  REQUIRE(c);
  CHECK(c->measure() == doctest::Approx(1.0));
  const auto far = ConvexPolytope::box(Vec(5, 5, 0), Vec(6, 6, 0), 2);
  CHECK_FALSE(intersect(a, far));
  const auto f = clip_face(Face{{Vec(-1, 1, 0), Vec(3, 1, 0)}}, a);
  REQUIRE(f);
  CHECK(f->measure() == doctest::Approx(2.0));
  CHECK_FALSE(clip_face(Face{{Vec(-1, 5, 0), Vec(3, 5, 0)}}, a));
}

TEST_CASE("segment crossing") {
  const Segment s{Vec(0, 0.5, 0), Vec(1, 0.5, 0)};
  const auto x = segment_face_crossing(s, Face{{Vec(0.3, 0, 0), Vec(0.3, 1, 0)}}, 2);
  REQUIRE(x);
  CHECK(x->isApprox(Vec(0.3, 0.5, 0)));
  CHECK_FALSE(segment_face_crossing(s, Face{{Vec(0.3, 0.6, 0), Vec(0.3, 1, 0)}}, 2));
}
