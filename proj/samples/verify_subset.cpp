#include <cstdio>

#include "coherekit/coherekit.hpp"

namespace ck = coherekit;
namespace hk = coherekit::harness;

int main() {
  hk::SuiteConfig cfg;
  cfg.trials = 100;
  cfg.bloch_trials = 1000;
  const auto checks = hk::select_checks(hk::all_checks(cfg), "theorem1/");
  const auto summary = hk::run_checks(checks, 2024);
  for (const auto& r : summary.checks) {
    std::printf("%-24s %s trials=%ld worst_slack=%.3e digest=%s\n", r.check_id.c_str(), r.pass() ? "PASS" : "FAIL", r.trials,
                r.worst_slack, r.instance_digest.c_str());
  }
  return summary.pass() ? 0 : 1;
}
