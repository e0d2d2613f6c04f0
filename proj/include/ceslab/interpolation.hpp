#pragma once

// K-functionals for the (L¹, L∞) couple: the exact concave profile t ↦ K(t,f),
// the weighted identity K(t, f; L¹(w), L∞(w)) = K(t, fw; L¹, L∞) with its
// optimal clip decomposition, and the weighted interpolation bound for the
// substitution operator.

#include <cstdint>
#include <string>

#include "ceslab/core.hpp"
#include "ceslab/inequalities.hpp"

namespace ceslab::interp {

// t ↦ ∫₀ᵗ f*(s) ds, piecewise linear and concave, exact for step f;
// saturates at ‖f‖_{L¹} once t exceeds the support measure.
class KProfile {
 public:
  explicit KProfile(const StepFunction& f);
  double operator()(double t) const;
  const PiecewiseLinear& profile() const { return pl_; }
  double saturation() const;  // ‖f‖_{L¹}

 private:
  PiecewiseLinear pl_;
};

// K(t, f; L¹, L∞) = ∫₀ᵗ f*.
double k_functional(const StepFunction& f, double t);

// Optimal decomposition for the weighted couple: h clips f·w at level λ
// (divided back by w), g = f − h. Weights are evaluated per cell of f's grid,
// so f·w is an exact step function and the λ-scan over its cell values is an
// exact minimization.
struct KDecomposition {
  double value = 0.0;   // ‖g‖_{L¹(w)} + t·‖h‖_{L∞(w)} at the optimum
  double lambda = 0.0;  // clip level on |f·w|
  StepFunction g;
  StepFunction h;
  double norm_g = 0.0;  // ‖g‖_{L¹(w)}
  double norm_h = 0.0;  // ‖h‖_{L∞(w)}
};
KDecomposition k_functional_weighted(const StepFunction& f, double t, const WeightPtr& w);
std::string kdecomp_json(const KDecomposition& d);

// Both sides of the weighted identity by independent code paths
// (λ-scan vs rearrangement integral); pass ⇔ equal within 1e−8 relative.
ineq::InequalityCheck check_k_identity(const StepFunction& f, double t, const WeightPtr& w);

// Empirical operator norm of the substitution operator on X(w) for X = Lp:
// sampled ratio maximization, asserted ≤ the endpoint bound e (couple
// constant 1 for Lp). Other X are rejected rather than guessed.
ineq::InequalityCheck check_weighted_interp_bound(const SpaceSpec& X, const WeightPtr& w,
                                                  std::size_t samples = 50,
                                                  std::uint64_t seed = 1);

}  // namespace ceslab::interp
