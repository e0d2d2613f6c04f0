#pragma once

// Quantitative inequality checks with their stated constants: Hardy bounds on
// the half line and the weighted unit interval, the averaged-weight bound, the
// iterated-average lemma (continuous and sequence forms), the d-substitution
// lemma, the endpoint bounds for the substitution operator, and the
// idempotency constants for the iterated Cesàro space.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ceslab/core.hpp"

namespace ceslab::ineq {

inline constexpr double kPassTol = 1e-9;  // relative on rhs

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant_used = 0.0;
  std::string provenance;  // where the constant comes from
  double margin = 0.0;     // rhs - lhs (0 when both sides are infinite)
  bool pass = false;       // lhs <= rhs·(1 + kPassTol)
};

InequalityCheck make_check(std::string name, double lhs, double rhs, double constant_used,
                           std::string provenance);
std::string check_json(const InequalityCheck& c);

// ‖Cf‖_p ≤ p′‖f‖_p, p ∈ (1, ∞]; p = 1 rejected (C is unbounded there).
InequalityCheck check_hardy_classical(const StepFunction& f, double p);

// Closed-form ratio ‖Cf‖_p/‖f‖_p for the near-extremal f = x^{ε-1/p}·χ[0,1]
// on the half line; approaches p′ as ε → 0.
double hardy_extremal_ratio(double p, double eps);

// ‖Cf‖_{Lp(x^α)} ≤ K‖f‖_{Lp(x^α)} with K = (1−α−1/p)^{−1}; requires α < 1−1/p.
InequalityCheck check_hardy_power(const StepFunction& f, double p, double alpha);

// Unit interval, 1 ≤ p < ∞, α < 1−1/p:
// ∫₀¹(Cf·x^α)^p ≤ C_{p,α}^p·∫₀¹((1−x)f·x^α)^p, C_{p,α} = p/(p−αp−1)·max(1, p−αp−1)^{1/p}.
InequalityCheck check_hardy_unit_weighted(const StepFunction& f, double p, double alpha);

// ‖Cf‖_p ≤ A·‖(1−x)f‖_p on [0,1], A = min(2(p′+2p), 2(p′+p)), p ∈ (1, ∞).
InequalityCheck check_am_weighted(const StepFunction& f, double p);

// Pointwise Cf(x/a) ≤ (a/ln a)·CCf(x) for a > 1 at every grid point
// (defaults to 200 points across f's support plus the breakpoints).
InequalityCheck check_curbera_ricker_cont(const StepFunction& f, double a,
                                          const std::vector<double>& grid = {});

// Σ_{j≤n} x_{⌊(j+2)/3⌋} ≤ 3·Σ_{j≤⌊(n+1)/2⌋} x_j ≤ 12·Σ_{j≤n} (Cx)_j for x ≥ 0;
// the binding link of the chain is reported.
InequalityCheck check_curbera_ricker_seq(const Sequence& x, std::size_t n);

// ∫₀^{t/d(t)}|f| ≤ ∫₀ᵗ C|f|(x)/(1−x) dx for t ∈ (0,1), d(t) = t+e−et;
// both sides in exact log closed form.
InequalityCheck check_d_lemma(const StepFunction& f, double t);

// ‖Th‖ ≤ e‖h‖ in L∞(1/(1−x)) and in L¹(1/(1−x)) on [0,1], T h = h∘σ.
std::pair<InequalityCheck, InequalityCheck> check_T_endpoint_bounds(const StepFunction& h);

// 1 − t^q ≤ max(1,q)(1−t) on a t-grid in [0,1]; q > 0.
InequalityCheck check_bernoulli(double q, int grid_points = 1025);

// Idempotency of the Cesàro construction over Lp on the half line:
// ratios ‖CCf‖_p/‖Cf‖_p must lie in [p′/e, p′], and the dilation expression
// a^{1/p′}/ln a attains ≈ e/p′ at a ≈ e^{p′}.
struct IdempotencyReport {
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<double> ratios;  // ‖CCf‖_p / ‖Cf‖_p
  double lo = 0.0;             // p′/e
  double hi = 0.0;             // p′
  double grid_min = 0.0;       // min over a of a^{1/p′}/ln a
  double grid_argmin = 0.0;
  double expected_min = 0.0;   // e/p′
  bool minimizer_ok = false;   // grid_min within 1% of e/p′
  bool pass = false;
};
IdempotencyReport check_idempotency(double p, std::size_t samples, std::uint64_t seed);
std::string idempotency_json(const IdempotencyReport& r);

}  // namespace ceslab::ineq
