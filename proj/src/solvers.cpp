#include "ceslab/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace ceslab::solve {

namespace {
constexpr double kPivotEps = 1e-11;
}

LpResult simplex_max(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& A,
                     const std::vector<double>& b) {
  const std::size_t m = b.size();
  const std::size_t n = c.size();
  assert(A.size() == m);

  // Tableau rows: m constraint rows + objective row; columns: n structural
  // variables, m slacks, rhs. Basis starts at the slacks (b >= 0 required).
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(n + m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    assert(A[i].size() == n);
    if (b[i] < 0.0) throw std::invalid_argument("simplex_max: b must be nonnegative");
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0;
    T[i][n + m] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpResult res;
  const std::size_t max_iters = 200 * (m + n + 10);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (T[m][j] < -kPivotEps) { enter = j; break; }
    }
    if (enter == n + m) break;  // optimal

    // Ratio test; Bland tie-break on the lowest basis index.
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] > kPivotEps) {
        const double ratio = T[i][n + m] / T[i][enter];
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      res.unbounded = true;
      return res;
    }

    // Pivot.
    const double piv = T[leave][enter];
    for (double& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = T[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= n + m; ++j) T[i][j] -= factor * T[leave][j];
    }
    basis[leave] = enter;
  }

  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) res.x[basis[i]] = T[i][n + m];
  }
  res.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

std::vector<double> pav_nondecreasing(const std::vector<double>& y,
                                      const std::vector<double>& w) {
  const std::size_t n = y.size();
  std::vector<double> weights = w.empty() ? std::vector<double>(n, 1.0) : w;
  assert(weights.size() == n);

  // Stack of merged blocks: (mean, total weight, count of points).
  std::vector<double> mean, wt;
  std::vector<std::size_t> cnt;
  mean.reserve(n); wt.reserve(n); cnt.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = y[i], tw = weights[i];
    std::size_t k = 1;
    while (!mean.empty() && mean.back() > m) {
      m = (mean.back() * wt.back() + m * tw) / (wt.back() + tw);
      tw += wt.back();
      k += cnt.back();
      mean.pop_back(); wt.pop_back(); cnt.pop_back();
    }
    mean.push_back(m); wt.push_back(tw); cnt.push_back(k);
  }
  std::vector<double> out(n);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < mean.size(); ++b)
    for (std::size_t j = 0; j < cnt[b]; ++j) out[pos++] = mean[b];
  return out;
}

std::vector<double> pav_nonincreasing(const std::vector<double>& y,
                                      const std::vector<double>& w) {
  std::vector<double> neg(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
  std::vector<double> r = pav_nondecreasing(neg, w);
  for (double& v : r) v = -v;
  return r;
}

}  // namespace ceslab::solve
