#pragma once

// Köthe associate norms, Cesàro-dual norms for sequences, down norms,
// Sinnamon's majorization supremum, and the per-theorem duality reports.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ceslab/core.hpp"
#include "ceslab/norms.hpp"

namespace ceslab::dual {

enum class DualMethod { Exact, Ascent, BruteForce };

// Certificate for sup_{h ≺ f} ∫ h g: the maximizer h, its objective, and the
// worst slack of the cumulative constraints min_u [∫₀ᵘ f − ∫₀ᵘ h].
struct MajorizationWitness {
  std::variant<Sequence, StepFunction> h;  // Sequence first: StepFunction has no default ctor
  double objective = 0.0;
  double constraint_slack = 0.0;
};

struct SinnamonResult {
  double lp_value = 0.0;
  double closed_form = 0.0;  // ∫ f·g̃ (resp. Σ f_n·g̃_n)
  MajorizationWitness witness;
};

// Conjugate spec with an exact norm identity, when one is known:
// Lp(w) → Lp′(1/w) (both kinds), Λφ → M_{t/φ}, Weighted(X,w) → Weighted(X′,1/w).
std::optional<SpaceSpec> conjugate_spec(const SpaceSpec& X);

// ‖g‖_{X′} = sup { ∫|f g| : ‖f‖_X ≤ 1 }.
NormValue associate_norm(const StepFunction& g, const SpaceSpec& X, DualMethod method);
NormValue associate_norm(const Sequence& g, const SpaceSpec& X, DualMethod method);

// ‖g‖_{(CX)′} for a sequence spec X: sup Σ g_n x_n over x ≥ 0, ‖Cx‖_X ≤ 1,
// computed through the prefix substitution z_n = n·(Cx)_n (z nondecreasing).
// Exact for X = ℓp(w) with p ∈ {1, 2, ∞}; ray ascent otherwise.
NormValue cesaro_dual_norm(const Sequence& g, const SpaceSpec& X);
// Independent dense-grid + refinement search in x-space (support ≤ 6).
NormValue cesaro_dual_brute(const Sequence& g, const SpaceSpec& X);

// Down norm: sup { ∫|f| h : h ≥ 0 nonincreasing, ‖h‖_{Xprime} ≤ 1 }.
// Exact for Xprime ∈ {L¹, L², L∞}; PAV-projected ascent otherwise.
struct DownNormResult {
  NormValue norm;
  StepFunction witness;  // the optimal (or best found) test function h
};
DownNormResult down_norm(const StepFunction& f, const SpaceSpec& Xprime);

// Proposition 2 both ways: the LP over cumulative-majorization constraints
// and the closed form ∫ f·g̃. Inputs must be nonnegative.
SinnamonResult sinnamon_sup(const StepFunction& f, const StepFunction& g);
SinnamonResult sinnamon_sup(const Sequence& f, const Sequence& g);

struct ConstantInfo {
  std::string name;
  double value = 0.0;
  std::string provenance;
};

struct DualityReport {
  SpaceSpec space;
  int theorem = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<double> ratios;
  double interval_lo = 0.0;  // proven lower constant (0 if one-sided)
  double interval_hi = 0.0;
  std::vector<ConstantInfo> constants;
  std::string ratio_description;
  bool hypotheses_verified = false;
  std::vector<std::string> notes;
  bool pass = false;

  static constexpr double kTolerance = 1e-6;  // interval inflation
};

// Sample random nonnegative g (per-sample deterministic seeds), compute both
// sides of the theorem's identity, and check the ratios against the proven
// constants. theorem ∈ {2,…,8}.
DualityReport duality_report(const SpaceSpec& X, int theorem,
                             std::size_t n_samples, std::uint64_t seed);

std::string report_json(const DualityReport& r);
std::string report_csv(const DualityReport& r);

}  // namespace ceslab::dual
