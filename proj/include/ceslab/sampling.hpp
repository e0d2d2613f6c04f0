#pragma once

// Deterministic sample generation: seeded random step functions and
// sequences, in the families used by the reports (generic random grids with
// log-uniform values, plus the adversarial decreasing / right-anchored block
// / heavy-tail shapes). Per-sample seeds are derived with a SplitMix64 hash,
// so sample k is reproducible regardless of evaluation order.

#include <cstdint>
#include <random>

#include "ceslab/core.hpp"

namespace ceslab::sampling {

enum class Family { Random, Decreasing, RightBlock, HeavyTail };

// Stateless seed mixing (SplitMix64); distinct streams per (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double log_uniform(double lo, double hi);  // lo, hi > 0
  int uniform_int(int lo, int hi);       // inclusive
 private:
  std::mt19937_64 eng_;
};

// Nonnegative step function with at most max_cells cells inside (0, span);
// values log-uniform in [1e-3, 1e3].
StepFunction random_step(Rng& rng, Domain domain, int max_cells, double span,
                         Family family = Family::Random);

// Nonnegative sequence of support length at most max_len.
Sequence random_seq(Rng& rng, int max_len, Family family = Family::Random);

// Cycle through the families deterministically by sample index.
Family family_for(std::size_t sample_index);

}  // namespace ceslab::sampling
