#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "stitlab/error.hpp"
#include "stitlab/io.hpp"

using namespace stitlab;

namespace {

TessellationState planar(std::uint64_t seed, double t = 1.5) {
  const HyperplaneMeasure m(DirectionalDistribution::isotropic(2));
  Rng rng = make_stream(seed, "io-test", 0);
  return run_local_stit(ConvexPolytope::box(Vec(0, 0, 0), Vec(8, 8, 0), 2), m, t, rng);
}

}  // namespace

TEST_CASE("stit-tess round trip") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto y = planar(seed);
    const auto doc = tessellation_to_json(y, "abc");
    const auto j = nlohmann::json::parse(doc);
    CHECK(j["format"] == "stit-tess/1");
    CHECK(j["config_hash"] == "abc");
    CHECK(j["cells"].size() == y.cells.size());
    CHECK(j["maximal_faces"].size() == y.ledger.size());
    CHECK(j["events"].size() == y.events.size());

    const auto back = tessellation_from_json(doc);
    REQUIRE(back.cells.size() == y.cells.size());
    for (std::size_t i = 0; i < y.cells.size(); ++i) {
      CHECK(back.cells[i].id == y.cells[i].id);
      CHECK(back.cells[i].polytope.measure() == doctest::Approx(y.cells[i].polytope.measure()));
    }
    REQUIRE(back.ledger.size() == y.ledger.size());
    for (std::size_t i = 0; i < y.ledger.size(); ++i)
      CHECK(back.ledger[i].internal_vertices.size() == y.ledger[i].internal_vertices.size());
    CHECK(tessellation_to_json(back, "abc") == doc);
  }
}

TEST_CASE("spatial round trip") {
  const HyperplaneMeasure m(DirectionalDistribution::isotropic(3));
  Rng rng = make_stream(4, "io-test-3d", 0);
  const auto y = run_local_stit(ConvexPolytope::box(Vec(0, 0, 0), Vec(3, 3, 3), 3), m, 1.0, rng);
  const auto back = tessellation_from_json(tessellation_to_json(y));
  CHECK(back.cells.size() == y.cells.size());
  CHECK(back.ledger.size() == y.ledger.size());
}

TEST_CASE("malformed tessellation documents") {
  CHECK_THROWS_AS(tessellation_from_json("{"), Error);
  CHECK_THROWS_AS(tessellation_from_json(R"({"format": "other"})"), Error);
  CHECK_THROWS_AS(tessellation_from_json(R"({"format": "stit-tess/1", "window": {"dim": 2, "vertices": []}, "events": []})"),
                  Error);
  try {
    tessellation_from_json(R"({"format": "stit-tess/1",
      "window": {"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]},
      "events": [{"time": 0.1, "cell": 0, "normal": [3, 0], "offset": 0.5, "plus": 1, "minus": 2}]})");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("events[0].normal") != std::string::npos);
  }
}

TEST_CASE("svg export") {
  const auto y = planar(5);
  const auto svg = tessellation_to_svg(y);
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t lines = 0;
  for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
  CHECK(lines == y.ledger.size());
  CHECK_THROWS_AS(tessellation_to_svg(TessellationState::initial(ConvexPolytope::box(Vec(0, 0, 0), Vec(1, 1, 1), 3))),
                  Error);
}

TEST_CASE("palm csv") {
  Rng rng(1);
  std::vector<PalmSegmentSample> xs{sample_typical_segment(3, 1, 1.0, rng), sample_typical_segment(3, 1, 1.0, rng)};
  std::ostringstream out;
  write_palm_header(out, 3);
  write_palm_rows(out, xs);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "s1,s2,L,N");
  std::getline(in, line);
  double s1 = 0, s2 = 0, L = 0;
  unsigned long long n = 0;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%llu", &s1, &s2, &L, &n) == 4);
  CHECK(s1 == xs[0].birth_times[0]);
  CHECK(s2 == xs[0].birth_times[1]);
  CHECK(L == xs[0].length);
  CHECK(n == xs[0].internal_vertices);
}

TEST_CASE("batch palm sampling does not depend on threads") {
  const auto a = sample_palm_batch(4, 1, 1.0, 25000, 11, 1);
  const auto b = sample_palm_batch(4, 1, 1.0, 25000, 11, 3);
  const auto tail = sample_palm_batch(4, 1, 1.0, 5000, 11, 1, 2);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].length == b[i].length);
  for (std::size_t i = 0; i < tail.size(); ++i) CHECK(tail[i].length == a[20000 + i].length);
}

TEST_CASE("report serialization separates runtimes") {
  AcceptanceReport r;
  r.master_seed = 3;
  r.config_hash = "0123456789abcdef";
  CriterionResult c;
  c.id = 1;
  c.title = "golden";
  c.pass = true;
  c.seconds = 0.25;
  TestReport t;
  t.name = "x";
  t.p_value = 0.5;
  t.pass = true;
  c.checks.push_back(t);
  r.criteria.push_back(c);
  const auto j = nlohmann::json::parse(report_to_json(r, "2020-01-01T00:00:00Z"));
  CHECK(j["format"] == "stitlab-report/1");
  CHECK(j["pass"] == true);
  CHECK(j["criteria"][0]["checks"][0]["p_value"] == 0.5);
  CHECK(j["criteria"][0]["checks"][0]["interval"].is_null());
  CHECK(j["metadata"]["runtime_seconds"]["1"] == 0.25);

  auto r2 = r;
  r2.criteria[0].seconds = 9.0;
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j.erase("metadata");
    return j.dump();
  };
  CHECK(strip(report_to_json(r, "a")) == strip(report_to_json(r2, "b")));
  const auto md = report_to_markdown(r);
  CHECK(md.find("| 1 | golden | PASS |") != std::string::npos);
}

TEST_CASE("p1j csv") {
  const auto csv = p1j_csv(0, 1, DistributionSpec{3, 1, 1.0});
  CHECK(csv.rfind("n,p,error\n0,0.1735057", 0) == 0);
}
