#pragma once

// Small dense optimization kernels shared by the dual-norm code: a tableau
// simplex for LPs with nonnegative right-hand sides, and weighted isotonic
// regression (pool-adjacent-violators) for projections onto monotone cones.

#include <vector>

namespace ceslab::solve {

struct LpResult {
  double value = 0.0;
  std::vector<double> x;
  bool unbounded = false;
};

// Maximize c·x subject to A x <= b, x >= 0, with every b_i >= 0 (so the
// origin is feasible). Dense tableau, Bland's rule. Sizes: |b| rows, |c| cols.
LpResult simplex_max(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& A,
                     const std::vector<double>& b);

// Weighted least-squares isotonic regression: argmin Σ w_i (x_i - y_i)²
// over nondecreasing (resp. nonincreasing) x. Empty w means unit weights.
std::vector<double> pav_nondecreasing(const std::vector<double>& y,
                                      const std::vector<double>& w = {});
std::vector<double> pav_nonincreasing(const std::vector<double>& y,
                                      const std::vector<double>& w = {});

}  // namespace ceslab::solve
