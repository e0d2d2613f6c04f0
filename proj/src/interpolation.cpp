#include "ceslab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "ceslab/norms.hpp"
#include "ceslab/operators.hpp"
#include "ceslab/sampling.hpp"

namespace ceslab::interp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

KProfile::KProfile(const StepFunction& f)
    : pl_(ops::decreasing_rearrangement(f.abs()).partial_integral()) {}

double KProfile::operator()(double t) const { return pl_(t); }

double KProfile::saturation() const { return pl_.back(); }

double k_functional(const StepFunction& f, double t) {
  if (!(t > 0.0)) throw Unsupported("k_functional: need t > 0");
  return KProfile(f)(t);
}

KDecomposition k_functional_weighted(const StepFunction& f, double t, const WeightPtr& w) {
  if (!(t > 0.0)) throw Unsupported("k_functional_weighted: need t > 0");
  const auto& bps = f.breakpoints();
  const std::size_t cells = f.cells();
  std::vector<double> wv(cells), fw(cells), len(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double mid = 0.5 * (bps[i] + bps[i + 1]);
    wv[i] = w ? (*w)(mid) : 1.0;
    if (!(wv[i] > 0.0)) throw Unsupported("k_functional_weighted: weight must be positive");
    fw[i] = std::fabs(f.values()[i]) * wv[i];
    len[i] = bps[i + 1] - bps[i];
  }

  // Candidate clip levels: 0 and the distinct values of |f·w|.
  std::vector<double> levels{0.0};
  levels.insert(levels.end(), fw.begin(), fw.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double best = kInf, best_lambda = 0.0;
  for (double lam : levels) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < cells; ++i) l1 += std::max(fw[i] - lam, 0.0) * len[i];
    const double val = l1 + t * lam;
    if (val < best) {
      best = val;
      best_lambda = lam;
    }
  }

  KDecomposition out{best,
                     best_lambda,
                     StepFunction::zero(f.domain()),
                     StepFunction::zero(f.domain()),
                     0.0,
                     0.0};
  std::vector<double> gv(cells), hv(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double sign = f.values()[i] < 0.0 ? -1.0 : 1.0;
    const double clipped = std::min(fw[i], best_lambda);  // |h·w| per cell
    hv[i] = sign * clipped / wv[i];
    gv[i] = f.values()[i] - hv[i];
    out.norm_g += std::fabs(gv[i]) * wv[i] * len[i];
    out.norm_h = std::max(out.norm_h, std::fabs(hv[i]) * wv[i]);
  }
  out.g = StepFunction(f.domain(), bps, std::move(gv));
  out.h = StepFunction(f.domain(), bps, std::move(hv));
  return out;
}

std::string kdecomp_json(const KDecomposition& d) {
  nlohmann::json j;
  j["value"] = d.value;
  j["lambda"] = d.lambda;
  j["norm_g_l1w"] = d.norm_g;
  j["norm_h_linfw"] = d.norm_h;
  j["g"] = nlohmann::json::parse(d.g.to_json());
  j["h"] = nlohmann::json::parse(d.h.to_json());
  return j.dump(2);
}

ineq::InequalityCheck check_k_identity(const StepFunction& f, double t, const WeightPtr& w) {
  const KDecomposition d = k_functional_weighted(f, t, w);

  // Independent path: rearrangement integral of the step function f·w
  // (weights evaluated per cell, as in the λ-scan).
  const auto& bps = f.breakpoints();
  std::vector<double> fw(f.cells());
  for (std::size_t i = 0; i < f.cells(); ++i) {
    const double mid = 0.5 * (bps[i] + bps[i + 1]);
    fw[i] = f.values()[i] * (w ? (*w)(mid) : 1.0);
  }
  const StepFunction fw_step(f.domain(), bps, std::move(fw));
  const double rhs = k_functional(fw_step, t);

  ineq::InequalityCheck c = ineq::make_check(
      "k_identity", d.value, rhs, 1.0,
      "K(t, f; L1(w), Linf(w)) = K(t, f·w; L1, Linf): clip-level scan vs "
      "rearrangement integral");
  const double scale = std::max({std::fabs(d.value), std::fabs(rhs), 1e-300});
  c.pass = std::fabs(d.value - rhs) <= 1e-8 * scale;
  return c;
}

ineq::InequalityCheck check_weighted_interp_bound(const SpaceSpec& X, const WeightPtr& w,
                                                  std::size_t samples, std::uint64_t seed) {
  const auto* lp = std::get_if<SpaceSpec::Lp>(&X.node);
  if (!lp || !lp->w->is_one())
    throw Unsupported("weighted interpolation bound: X must be an unweighted Lp "
                      "(exact couple constant 1); other spaces are skipped");
  if (lp->domain.kind != DomainKind::UnitInterval)
    throw DomainMismatch("weighted interpolation bound: unit interval only");
  const SpaceSpec Xw = *SpaceSpec::weighted(SpaceSpec::lp(lp->p, Weight::one(), lp->domain), w);

  double sup_ratio = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    StepFunction h0 =
        sampling::random_step(rng, Domain::unit(), 20, 1.0, sampling::family_for(k));
    // Keep ‖h‖_{X(w)} finite when w has a pole at 1: vanish beyond a cutoff.
    const double cutoff = 1.0 - rng.uniform(0.05, 0.5);
    const std::vector<double> cut{0.0, cutoff, 1.0};
    std::vector<double> grid = merge_breakpoints({&h0.breakpoints(), &cut}, 1.0);
    std::vector<double> vals(grid.size() - 1);
    bool nonzero = false;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double mid = 0.5 * (grid[i] + grid[i + 1]);
      vals[i] = mid < cutoff ? h0(mid) : 0.0;
      nonzero = nonzero || vals[i] != 0.0;
    }
    if (!nonzero) vals[0] = 1.0;
    StepFunction h(Domain::unit(), grid, std::move(vals));
    const double denom = norm(h, Xw).value;
    if (!(denom > 0.0) || std::isinf(denom)) continue;
    const double numer = norm(ops::substitution_T(h), Xw).value;
    sup_ratio = std::max(sup_ratio, numer / denom);
  }

  return ineq::make_check("weighted_interp_bound", sup_ratio, std::exp(1.0), std::exp(1.0),
                          "||T||_{X(w)} <= max endpoint bound e; Lp couple constant 1");
}

}  // namespace ceslab::interp
