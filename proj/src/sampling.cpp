#include "ceslab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ceslab::sampling {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  return lo + static_cast<int>(uniform() * span) % span;
}

namespace {

std::vector<double> random_breakpoints(Rng& rng, int cells, double span) {
  std::vector<double> bps(static_cast<std::size_t>(cells));
  for (double& b : bps) b = rng.uniform(0.0, span);
  std::sort(bps.begin(), bps.end());
  // Deduplicate pathological coincidences; keep points strictly inside.
  std::vector<double> out;
  double prev = 0.0;
  for (double b : bps) {
    if (b > prev + 1e-12 * span && b < span * (1.0 - 1e-12)) {
      out.push_back(b);
      prev = b;
    }
  }
  if (out.empty()) out.push_back(span * 0.5);
  return out;
}

}  // namespace

StepFunction random_step(Rng& rng, Domain domain, int max_cells, double span,
                         Family family) {
  const int cells = std::max(1, rng.uniform_int(1, max_cells) - 1);
  std::vector<double> bps = random_breakpoints(rng, cells, span);
  std::vector<double> vals(bps.size() + 1);

  switch (family) {
    case Family::Random:
      for (double& v : vals) v = rng.log_uniform(1e-3, 1e3);
      break;
    case Family::Decreasing: {
      for (double& v : vals) v = rng.log_uniform(1e-3, 1e3);
      std::sort(vals.begin(), vals.end(), std::greater<double>());
      break;
    }
    case Family::RightBlock: {
      // Single block anchored at the right end of the span.
      std::fill(vals.begin(), vals.end(), 0.0);
      vals.back() = rng.log_uniform(1e-2, 1e2);
      break;
    }
    case Family::HeavyTail: {
      // Values ~ cell-midpoint^{-theta}: large mass near zero.
      const double theta = rng.uniform(0.4, 0.9);
      double left = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double right = i < bps.size() ? bps[i] : span;
        const double mid = 0.5 * (left + right);
        vals[i] = std::pow(std::max(mid, 1e-9 * span), -theta);
        left = right;
      }
      break;
    }
  }

  // Ensure the function is not identically zero.
  bool all_zero = true;
  for (double v : vals) all_zero = all_zero && v == 0.0;
  if (all_zero) vals[0] = 1.0;

  // Interior points -> full breakpoint vector 0 < b_1 < ... < span.
  std::vector<double> full;
  full.reserve(bps.size() + 2);
  full.push_back(0.0);
  for (double b : bps) full.push_back(b);
  full.push_back(span);
  if (domain.kind == DomainKind::UnitInterval) {
    for (double& b : full) b /= span;
    full.back() = 1.0;
    return StepFunction(Domain::unit(), std::move(full), std::move(vals));
  }
  return StepFunction(Domain::half_line(span), std::move(full), std::move(vals));
}

Sequence random_seq(Rng& rng, int max_len, Family family) {
  const int len = rng.uniform_int(1, max_len);
  std::vector<double> v(static_cast<std::size_t>(len), 0.0);
  switch (family) {
    case Family::Random:
      for (double& x : v) x = rng.log_uniform(1e-3, 1e3);
      break;
    case Family::Decreasing:
      for (double& x : v) x = rng.log_uniform(1e-3, 1e3);
      std::sort(v.begin(), v.end(), std::greater<double>());
      break;
    case Family::RightBlock: {
      const int width = rng.uniform_int(1, std::max(1, len / 4));
      const double h = rng.log_uniform(1e-2, 1e2);
      for (int i = len - width; i < len; ++i) v[static_cast<std::size_t>(i)] = h;
      break;
    }
    case Family::HeavyTail: {
      const double theta = rng.uniform(0.6, 1.4);
      for (int i = 0; i < len; ++i)
        v[static_cast<std::size_t>(i)] = std::pow(i + 1.0, -theta);
      break;
    }
  }
  bool all_zero = true;
  for (double x : v) all_zero = all_zero && x == 0.0;
  if (all_zero) v[0] = 1.0;
  return Sequence(std::move(v));
}

Family family_for(std::size_t sample_index) {
  switch (sample_index % 4) {
    case 0: return Family::Random;
    case 1: return Family::Decreasing;
    case 2: return Family::RightBlock;
    default: return Family::HeavyTail;
  }
}

}  // namespace ceslab::sampling
