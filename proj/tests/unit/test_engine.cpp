#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stitlab/error.hpp"
#include "stitlab/stats.hpp"
#include "stitlab/stit_engine.hpp"

using namespace stitlab;

namespace {

ConvexPolytope box2(double lo, double hi) { return ConvexPolytope::box(Vec(lo, lo, 0), Vec(hi, hi, 0), 2); }
HyperplaneMeasure axis2() { return HyperplaneMeasure(DirectionalDistribution::axis_parallel(2)); }
HyperplaneMeasure iso2() { return HyperplaneMeasure(DirectionalDistribution::isotropic(2)); }

double total_cell_measure(const TessellationState& s) {
  double v = 0.0;
  for (const auto& c : s.cells) v += c.polytope.measure();
  return v;
}

// State with the unit square split once by the given line.
TessellationState single_split(const Hyperplane& h) {
  auto st = TessellationState::initial(box2(0, 1));
  SplitEvent e{0.5, 0, h, 1, 2, 0};
  return replay(st.window, {e}, 1.0);
}

}  // namespace

TEST_CASE("zero horizon leaves the window whole") {
  Rng rng(1);
  const auto st = run_local_stit(box2(0, 1), axis2(), 0.0, rng);
  CHECK(st.cells.size() == 1);
  CHECK(st.ledger.empty());
  CHECK(st.events.empty());
}

TEST_CASE("first split time and direction") {
  const auto w = box2(0, 1);
  const auto measure = axis2();
  std::vector<double> times;
  int vertical = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Rng rng = make_stream(99, "first-jump", i);
    StitSimulator sim(w, measure);
    REQUIRE(sim.step(1e300, rng));
    times.push_back(sim.state().time);
    vertical += std::abs(sim.state().ledger[0].hyperplane.normal.x()) > 0.5;
  }
  const auto ci = mean_ci(times);
  CHECK(std::abs(ci.mean - 1.0) <= 0.01);
  CHECK(ks_one_sample(times, [](double x) { return 1 - std::exp(-x); }).p_value > 0.001);
  const double observed[] = {double(vertical), double(n - vertical)};
  const double probs[] = {0.5, 0.5};
  CHECK(chi_square_categories(observed, probs).p_value > 0.001);
}

TEST_CASE("tiling, ledger completeness and monotone birth times") {
  for (int variant = 0; variant < 2; ++variant) {
    Rng rng(variant + 3);
    const auto w = box2(0, 10);
    std::vector<double> child_birth;
    StitSimulator sim(w, variant ? iso2() : axis2());
    while (sim.step(1.5, rng)) {
      const auto& st = sim.state();
      CHECK(std::abs(total_cell_measure(st) - w.measure()) <= 1e-8 * w.measure());
    }
    const auto& st = sim.state();
    CHECK(st.ledger.size() == st.events.size());
    CHECK(st.cells.size() == st.ledger.size() + 1);
    std::unordered_map<CellId, double> born{{0, 0.0}};
    for (const auto& e : st.events) {
      CHECK(e.time > born.at(e.cell_id));
      born[e.plus_id] = e.time;
      born[e.minus_id] = e.time;
    }
    for (const auto& rec : st.ledger) {
      for (const auto& iv : rec.internal_vertices) {
        CHECK(iv.time > rec.birth_time);
        CHECK(point_on_segment_interior(iv.point, rec.face.segment(), 1e-7));
      }
    }
  }
}

TEST_CASE("3d runs tile the window") {
  Rng rng(17);
  const auto w = ConvexPolytope::box(Vec(0, 0, 0), Vec(4, 4, 4), 3);
  for (auto m : {DirectionalDistribution::axis_parallel(3), DirectionalDistribution::isotropic(3)}) {
    const auto st = run_local_stit(w, HyperplaneMeasure(m), 2.0, rng);
    CHECK(st.cells.size() == st.ledger.size() + 1);
    CHECK(std::abs(total_cell_measure(st) - w.measure()) <= 1e-8 * w.measure());
    CHECK(st.cells.size() > 10);
  }
}

TEST_CASE("determinism and replay") {
  const auto w = box2(0, 8);
  Rng a(1234);
  Rng b(1234);
  const auto s1 = run_local_stit(w, iso2(), 2.0, a);
  const auto s2 = run_local_stit(w, iso2(), 2.0, b);
  REQUIRE(s1.events.size() == s2.events.size());
  for (std::size_t i = 0; i < s1.events.size(); ++i) {
    CHECK(s1.events[i].time == s2.events[i].time);
    CHECK(s1.events[i].hyperplane.offset == s2.events[i].hyperplane.offset);
    CHECK(s1.events[i].hyperplane.normal == s2.events[i].hyperplane.normal);
  }
  const auto r = replay(w, s1.events, s1.time);
  REQUIRE(r.cells.size() == s1.cells.size());
  REQUIRE(r.ledger.size() == s1.ledger.size());
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    CHECK(r.cells[i].id == s1.cells[i].id);
    CHECK(r.cells[i].polytope.measure() == doctest::Approx(s1.cells[i].polytope.measure()));
  }
  for (std::size_t i = 0; i < r.ledger.size(); ++i)
    CHECK(r.ledger[i].internal_vertices.size() == s1.ledger[i].internal_vertices.size());
}

TEST_CASE("max cell guard") {
  Rng rng(1);
  EngineOptions opt;
  opt.max_cells = 5;
  CHECK_THROWS_AS(run_local_stit(box2(0, 10), axis2(), 10.0, rng, opt), Error);
}

TEST_CASE("line section") {
  Rng rng(3);
  const auto st = run_local_stit(box2(0, 10), axis2(), 2.0, rng);
  const auto pts = line_section(st, Vec(2, 5, 0), Vec(8, 5, 0));
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].x() > pts[i - 1].x());
  CHECK_THROWS_AS(line_section(st, Vec(-1, 5, 0), Vec(8, 5, 0)), Error);
  Rng rng0(3);
  const auto early = run_local_stit(box2(0, 10), axis2(), 1e-9, rng0);
  CHECK(line_section(early, Vec(2, 5, 0), Vec(8, 5, 0)).empty());
}

TEST_CASE("restrict") {
  Rng rng(5);
  const auto st = run_local_stit(box2(0, 10), iso2(), 1.5, rng);
  const auto same = restrict(st, st.window);
  CHECK(same.cells.size() == st.cells.size());
  CHECK(same.ledger.size() == st.ledger.size());

  const auto one = single_split(Hyperplane::make(Vec(1, 0, 0), 0.3, 2));
  const auto r = restrict(one, ConvexPolytope::box(Vec(0.5, 0, 0), Vec(1, 1, 0), 2));
  CHECK(r.cells.size() == 1);
  CHECK(r.ledger.empty());

  const auto sub = box2(2, 7);
  const auto rs = restrict(st, sub);
  CHECK(std::abs(total_cell_measure(rs) - sub.measure()) <= 1e-8 * sub.measure());
  CHECK(rs.cells.size() == rs.ledger.size() + 1);
  CHECK_THROWS_AS(restrict(st, box2(5, 12)), Error);
}

TEST_CASE("iterate") {
  Rng rng(6);
  const auto w = box2(0, 6);
  const auto st = run_local_stit(w, axis2(), 1.0, rng);
  std::vector<TessellationState> trivial(st.cells.size(), TessellationState::initial(w));
  const auto same = iterate(st, trivial);
  CHECK(same.cells.size() == st.cells.size());
  CHECK(same.ledger.size() == st.ledger.size());

  const auto fresh = run_local_stit(w, axis2(), 1.0, rng);
  const auto it = iterate(TessellationState::initial(w), {fresh});
  REQUIRE(it.cells.size() == fresh.cells.size());
  for (std::size_t i = 0; i < it.cells.size(); ++i)
    CHECK(it.cells[i].polytope.measure() == doctest::Approx(fresh.cells[i].polytope.measure()));

  std::vector<TessellationState> many;
  for (std::size_t i = 0; i < st.cells.size(); ++i) many.push_back(run_local_stit(w, axis2(), 1.0, rng));
  const auto nested = iterate(st, many);
  CHECK(std::abs(total_cell_measure(nested) - w.measure()) <= 1e-8 * w.measure());
  CHECK(nested.cells.size() == nested.ledger.size() + 1);
  CHECK(nested.time == doctest::Approx(2.0));

  CHECK_THROWS_AS(iterate(st, {}), Error);
  std::vector<TessellationState> wrong(st.cells.size(), TessellationState::initial(box2(0, 5)));
  CHECK_THROWS_AS(iterate(st, wrong), Error);
}

TEST_CASE("rescale") {
  Rng rng(8);
  const auto st = run_local_stit(box2(0, 5), iso2(), 1.0, rng);
  const auto one = rescale(st, 1.0);
  CHECK(one.cells[0].polytope.measure() == st.cells[0].polytope.measure());
  const auto two = rescale(st, 2.0);
  for (std::size_t i = 0; i < st.cells.size(); ++i)
    CHECK(two.cells[i].polytope.measure() == doctest::Approx(4 * st.cells[i].polytope.measure()));
  for (std::size_t i = 0; i < st.ledger.size(); ++i)
    CHECK(two.ledger[i].face.measure() == doctest::Approx(2 * st.ledger[i].face.measure()));
  CHECK_THROWS_AS(rescale(st, 0.0), Error);
}

TEST_CASE("typical segment extraction") {
  const auto empty = TessellationState::initial(box2(0, 10));
  CHECK(extract_typical_segments_2d(empty, box2(2, 8)).empty());

  // A chord inside the window that reaches the boundary is excluded.
  const auto one = single_split(Hyperplane::make(Vec(1, 0, 0), 0.5, 2));
  CHECK(extract_typical_segments_2d(one, box2(0.1, 0.9)).empty());

  // Later chords ending on earlier ones give them internal vertices.
  auto st = TessellationState::initial(box2(0, 1));
  std::vector<SplitEvent> ev{
      {0.1, 0, Hyperplane::make(Vec(1, 0, 0), 0.5, 2), 1, 2, 0},
      {0.2, 2, Hyperplane::make(Vec(0, 1, 0), 0.5, 2), 3, 4, 1},
      {0.3, 4, Hyperplane::make(Vec(1, 0, 0), 0.25, 2), 5, 6, 2},
  };
  auto two = replay(st.window, {ev[0], ev[1]}, 1.0);
  CHECK(two.ledger[0].internal_vertices.size() == 1);
  CHECK(two.ledger[1].touches_window_boundary);
  auto three = replay(st.window, ev, 1.0);
  CHECK(three.ledger[1].internal_vertices.size() == 1);
  CHECK(three.ledger[2].touches_window_boundary);
  CHECK_THROWS_AS(extract_typical_segments_2d(one, box2(0, 1)), Error);
}

TEST_CASE("summary statistics") {
  const auto st = TessellationState::initial(box2(0, 1));
  const auto s0 = summary_statistics(st, st.window, {Segment{Vec(0.1, 0.5, 0), Vec(0.9, 0.5, 0)}});
  CHECK(s0.cell_count == 1);
  CHECK(s0.total_face_measure == 0.0);
  CHECK(s0.chord_counts == std::vector<std::size_t>{0});
  const auto diag = single_split(Hyperplane::make(Vec(1, 1, 0), 1.0, 2));
  const auto s1 = summary_statistics(diag, diag.window, {Segment{Vec(0.1, 0.5, 0), Vec(0.9, 0.5, 0)}});
  CHECK(s1.cell_count == 2);
  CHECK(s1.total_face_measure == doctest::Approx(std::sqrt(2.0)));
  CHECK(s1.chord_counts == std::vector<std::size_t>{1});
}

TEST_CASE("maximal segment intensity for axis-parallel lines") {
  // 0.25 per unit area at t = 1: count ledger midpoints inside an inner region.
  const auto w = box2(0, 20);
  const auto inner = box2(5, 15);
  double count = 0.0;
  const int reps = 400;
  for (int i = 0; i < reps; ++i) {
    Rng rng = make_stream(7, "intensity", i);
    const auto st = run_local_stit(w, axis2(), 1.0, rng);
    for (const auto& rec : st.ledger) count += inner.contains(rec.face.center(), 0.0);
  }
  CHECK(count / (reps * inner.measure()) == doctest::Approx(0.25).epsilon(0.05));
}
