#pragma once

// The acceptance suite: twelve numbered criteria covering the Sinnamon
// identity, the Hardy constants, sequence duality, the isometric dual, the
// down-norm chain, the K-functional identity, the pointwise lemmas,
// idempotency, support collapse, and the Lorentz duality band. Each criterion
// is deterministic in (seed, samples) and emits a machine-readable payload.

#include <cstdint>
#include <string>
#include <vector>

namespace ceslab::suite {

struct SuiteConfig {
  std::uint64_t seed = 7001;
  std::size_t samples = 0;     // 0 = per-criterion defaults
  double tolerance = -1.0;     // < 0 = per-criterion defaults
  std::string format = "json"; // "json" | "csv" payloads
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // one-line human summary
  std::string payload;  // JSON or CSV body for file emission
};

inline constexpr int kCriteria = 12;

CriterionResult run_criterion(int id, const SuiteConfig& cfg);  // id in [1, 12]
std::vector<CriterionResult> run_all(const SuiteConfig& cfg);   // criteria in parallel

}  // namespace ceslab::suite
