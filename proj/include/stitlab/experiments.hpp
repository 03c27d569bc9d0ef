#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stitlab/stats.hpp"

namespace stitlab {

/// Parameters of the acceptance suite. Defaults match configs/acceptance.toml.
struct AcceptanceConfig {
  std::uint64_t master_seed = 20240601;
  unsigned threads = 0;
  double alpha = 0.01;
  std::size_t min_samples = kDefaultMinSamples;
  /// Planar window [0, side]^2 and inner window at distance `margin`.
  double window_side = 20.0;
  double window_margin = 5.0;
  /// Criteria to run; empty means all.
  std::vector<int> only;

  struct Golden {
    double abs_tol = 1e-6;
    double time_budget = 1.0;
  } golden;

  struct Moments {
    unsigned n_head = 60;
    double tolerance = 1e-4;
    double time_budget = 30.0;
  } moments;

  struct Palm {
    std::size_t samples = 1'000'000;
    std::vector<std::pair<int, int>> cases{{2, 0}, {3, 0}, {3, 1}, {4, 1}};
    double standard_errors = 3.0;
    double time_budget = 120.0;
  } palm;

  struct WindowSegments {
    double horizon = 32.0;
    std::size_t replications = 4;
    std::size_t min_segments = 5000;
    /// Size of the uniform subsample handed to the goodness-of-fit tests.
    std::size_t test_samples = 5000;
    double mean_tolerance = 0.1;
    double time_budget = 300.0;
    double birth_time_budget = 120.0;
  } window_segments;

  struct LineSections {
    double horizon = 2.0;
    std::size_t probes = 40000;
    std::size_t probes_per_line = 8;
    double tolerance = 0.02;
    double time_budget = 120.0;
  } line_sections;

  struct Mecke {
    double horizon = 1.0;
    std::size_t replications = 500;
    std::size_t grid_nodes = 41;
    std::size_t inner_mc = 1;
    double time_budget = 900.0;
  } mecke;

  struct Stability {
    std::size_t replications = 1000;
    std::size_t intensity_replications = 1000;
    double intensity_tolerance = 0.05;
    double time_budget = 600.0;
  } stability;

  struct FirstJump {
    std::size_t replications = 100000;
    double time_budget = 60.0;
  } first_jump;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  double time_budget = 0.0;
  std::vector<TestReport> checks;
};

struct AcceptanceReport {
  std::uint64_t master_seed = 0;
  std::string config_hash;
  std::vector<CriterionResult> criteria;

  bool pass() const;
};

inline constexpr int kCriterionCount = 9;

std::string criterion_title(int id);

/// Runs one criterion (1..9).
CriterionResult run_criterion(int id, const AcceptanceConfig& config);

/// Runs the selected criteria in order; `progress` sees each result as it
/// completes.
AcceptanceReport run_acceptance(const AcceptanceConfig& config,
                                const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace stitlab
