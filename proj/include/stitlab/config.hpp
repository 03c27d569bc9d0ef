#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stitlab/experiments.hpp"
#include "stitlab/geometry.hpp"
#include "stitlab/hyperplane_measure.hpp"

namespace stitlab {

/// Directional part of a hyperplane measure as written in a config file.
struct MeasureSpec {
  /// "isotropic", "axis-parallel" or "discrete".
  std::string type = "isotropic";
  std::vector<DirectionalAtom> atoms;

  HyperplaneMeasure build(int dim) const;
};

MeasureSpec parse_measure_name(std::string_view name);

struct SimulateConfig {
  int dim = 2;
  Vec lo = Vec::Zero();
  Vec hi = Vec(20, 20, 0);
  double horizon = 1.0;
  MeasureSpec measure;
  std::uint64_t seed = 0;
  std::size_t max_cells = 10'000'000;
  std::string output;
  std::string svg;
  std::string config_hash;

  ConvexPolytope window() const { return ConvexPolytope::box(lo, hi, dim); }
};

/// 16 hex digits identifying the parsed (normalized) document.
std::string config_hash(std::string_view canonical_text);

/// Parsers throw Error(Errc::Config) with a message naming the offending field
/// path (e.g. "palm.samples: expected a non-negative integer").
AcceptanceConfig parse_acceptance_config(std::string_view toml_text, std::string* hash = nullptr);
AcceptanceConfig load_acceptance_config(const std::string& path, std::string* hash = nullptr);

SimulateConfig parse_simulate_config(std::string_view toml_text);
SimulateConfig load_simulate_config(const std::string& path);

}  // namespace stitlab
