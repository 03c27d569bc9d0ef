#include <doctest.h>

#include <string>

#include "stitlab/config.hpp"
#include "stitlab/error.hpp"

using namespace stitlab;

namespace {

std::string message_of(const std::string& toml) {
  try {
    parse_acceptance_config(toml);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Config);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty acceptance config gives the defaults") {
  const auto c = parse_acceptance_config("");
  const AcceptanceConfig d;
  CHECK(c.master_seed == d.master_seed);
  CHECK(c.palm.samples == d.palm.samples);
  CHECK(c.window_segments.horizon == d.window_segments.horizon);
}

TEST_CASE("acceptance config values are read") {
  const auto c = parse_acceptance_config(R"(
master_seed = 7
only = [1, 3]
[palm]
samples = 5000
cases = [[2, 0], [5, 1]]
[window]
side = 30.0
margin = 4
)");
  CHECK(c.master_seed == 7);
  CHECK(c.only == std::vector<int>{1, 3});
  CHECK(c.palm.samples == 5000);
  REQUIRE(c.palm.cases.size() == 2);
  CHECK(c.palm.cases[1] == std::pair{5, 1});
  CHECK(c.window_side == 30.0);
  CHECK(c.window_margin == 4.0);
}

TEST_CASE("malformed configs name the offending field") {
  CHECK(message_of("[palm]\nsamples = -3\n").find("palm.samples") != std::string::npos);
  CHECK(message_of("[palm]\nsamples = \"many\"\n").find("palm.samples") != std::string::npos);
  CHECK(message_of("[palm]\ncases = [[1, 0]]\n").find("palm.cases[0]") != std::string::npos);
  CHECK(message_of("only = [12]\n").find("only[0]") != std::string::npos);
  CHECK(message_of("[window]\nside = 10\nmargin = 6\n").find("window.margin") != std::string::npos);
  CHECK(message_of("[mecke]\nhorizn = 1\n").find("mecke.horizn") != std::string::npos);
  CHECK(message_of("alpha = 2\n").find("alpha") != std::string::npos);
  CHECK_FALSE(message_of("master_seed = = 3\n").empty());
}

TEST_CASE("config hash ignores formatting") {
  std::string h1, h2, h3;
  parse_acceptance_config("master_seed = 1\n[palm]\nsamples = 10\n", &h1);
  parse_acceptance_config("# comment\nmaster_seed=1\n\n[palm]\n  samples = 10 # more\n", &h2);
  parse_acceptance_config("master_seed = 2\n[palm]\nsamples = 10\n", &h3);
  CHECK(h1 == h2);
  CHECK(h1 != h3);
  CHECK(h1.size() == 16);
}

TEST_CASE("simulate config") {
  const auto c = parse_simulate_config(R"(
seed = 9
horizon = 2.5
[window]
lo = [0, 0, 0]
hi = [4, 5, 6]
[measure]
type = "discrete"
atoms = [{normal = [1, 0, 0], weight = 0.25}, {normal = [0, 1, 1], weight = 0.5}, {normal = [0, 0, 1], weight = 0.25}]
)");
  CHECK(c.dim == 3);
  CHECK(c.horizon == 2.5);
  CHECK(c.hi.z() == 6.0);
  CHECK(c.measure.type == "discrete");
  CHECK(c.measure.atoms.size() == 3);
  CHECK(c.measure.build(3).dim() == 3);
  CHECK_FALSE(c.config_hash.empty());

  CHECK_THROWS_AS(parse_simulate_config("horizon = 1\n"), Error);
  try {
    parse_simulate_config("[window]\nlo = [0, 0]\nhi = [1, -1]\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("window.hi[1]") != std::string::npos);
  }
}

TEST_CASE("measure names") {
  CHECK(parse_measure_name("iso").type == "isotropic");
  CHECK(parse_measure_name("axis").type == "axis-parallel");
  CHECK_THROWS_AS(parse_measure_name("poisson"), Error);
}
