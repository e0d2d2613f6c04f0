// Acceptance runner: executes the twelve suite criteria with their default
// configuration and prints one verdict line each.
#include <chrono>
#include <cstdio>
#include <string>

#include "ceslab/suite.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  const ceslab::suite::SuiteConfig cfg;  // seed 7001, per-criterion defaults
  int failures = 0;

  for (int id = 1; id <= ceslab::suite::kCriteria; ++id) {
    const auto t0 = clock::now();
    ceslab::suite::CriterionResult r;
    try {
      r = ceslab::suite::run_criterion(id, cfg);
    } catch (const std::exception& e) {
      std::printf("[FAIL] #%-2d <exception> — %s\n", id, e.what());
      ++failures;
      continue;
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();

    bool ok = r.pass;
    std::string detail = r.detail;
    if (id == 1 && secs >= 30.0) {
      ok = false;
      detail += " [exceeded 30s budget: " + std::to_string(secs) + "s]";
    }
    std::printf("[%s] #%-2d %-22s — %s (%.1fs)\n", ok ? "PASS" : "FAIL", r.id,
                r.name.c_str(), detail.c_str(), secs);
    if (!ok) ++failures;
  }

  if (failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all %d criteria passed\n", ceslab::suite::kCriteria);
  return 0;
}
