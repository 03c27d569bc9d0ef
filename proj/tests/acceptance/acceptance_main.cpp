// Runs the acceptance suite and prints one line per criterion.
#include <cstdio>
#include <exception>
#include <string>

#include "stitlab/config.hpp"
#include "stitlab/experiments.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : STITLAB_ACCEPTANCE_CONFIG;
  try {
    std::string hash;
    const auto cfg = stitlab::load_acceptance_config(path, &hash);
    std::printf("config %s (hash %s, seed %llu)\n", path.c_str(), hash.c_str(),
                static_cast<unsigned long long>(cfg.master_seed));
    const auto report = stitlab::run_acceptance(cfg, [](const stitlab::CriterionResult& c) {
      std::printf("criterion %d: %s  %s  (%.2f s, budget %.0f s)\n", c.id, c.pass ? "PASS" : "FAIL", c.title.c_str(),
                  c.seconds, c.time_budget);
      for (const auto& t : c.checks) {
        std::printf("    [%s] %s: %s = %.6g", t.pass ? "ok" : "failed", t.name.c_str(), t.statistic_name.c_str(),
                    t.statistic);
        if (t.p_value) std::printf(", p = %.4g", *t.p_value);
        if (!t.detail.empty()) std::printf("  (%s)", t.detail.c_str());
        std::printf("\n");
      }
      std::fflush(stdout);
    });
    std::printf("%s\n", report.pass() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return report.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
}
