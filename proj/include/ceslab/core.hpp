#pragma once

// Exact piecewise-constant functions on [0,1] or [0,inf), eventually-zero
// sequences, weights, concave gauges, and the recursive space description
// used by the norm and duality engines.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ceslab {

// Thrown for malformed inputs (bad breakpoints, negative weights, ...).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown when two objects live on incompatible domains.
struct DomainMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown for space/operation combinations the engine has no method for.
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DomainKind { UnitInterval, HalfLine };

// A function domain. HalfLine functions are represented up to `horizon` and
// vanish beyond it; operators with genuine tails (Cesaro averages) carry the
// tail analytically instead of truncating.
struct Domain {
  DomainKind kind = DomainKind::UnitInterval;
  double horizon = 1.0;  // always 1 for UnitInterval

  static Domain unit() { return {DomainKind::UnitInterval, 1.0}; }
  static Domain half_line(double horizon) { return {DomainKind::HalfLine, horizon}; }
  bool operator==(const Domain& o) const { return kind == o.kind && horizon == o.horizon; }
  std::string describe() const;
};

// Breakpoints closer than this (relative to the horizon) merge on refinement.
inline constexpr double kBreakpointMergeRel = 1e-14;

// ∫_0^x f, piecewise linear, exact at breakpoints.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;  // clamps left of 0; continues last slope=0 beyond
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double back() const { return ys_.back(); }

 private:
  std::vector<double> xs_{0.0};
  std::vector<double> ys_{0.0};
};

// Piecewise-constant function: value v_i on [t_{i-1}, t_i), 0 beyond horizon.
class StepFunction {
 public:
  StepFunction(Domain d, std::vector<double> breakpoints, std::vector<double> values);
  static StepFunction zero(Domain d);
  // Indicator v·χ_[lo,hi) padded with zeros to cover [0, horizon].
  static StepFunction indicator(Domain d, double lo, double hi, double value = 1.0);

  const Domain& domain() const { return domain_; }
  // size m+1; breakpoints_[0] == 0, breakpoints_.back() == horizon
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }  // size m
  std::size_t cells() const { return values_.size(); }

  double operator()(double x) const;  // right-open cells; 0 outside [0, horizon)
  StepFunction abs() const;
  bool is_zero() const;
  double integral() const;            // ∫ f
  double max_abs() const;

  // ∫_0^x f as an exact piecewise-linear profile.
  PiecewiseLinear partial_integral() const;

  std::string to_json() const;
  static StepFunction from_json(const std::string& text);

 private:
  Domain domain_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Common refinement of several breakpoint sets; near-duplicates merge at
// kBreakpointMergeRel * horizon.
std::vector<double> merge_breakpoints(const std::vector<const std::vector<double>*>& sets,
                                      double horizon);
// Resample f onto a refinement of its own grid (values are exact).
StepFunction resample(const StepFunction& f, const std::vector<double>& grid);
// a·f + b·g on the merged grid (domains must match in kind; horizon = max).
StepFunction lin_comb(double a, const StepFunction& f, double b, const StepFunction& g);

// Eventually-zero sequence, 1-indexed via x.at1(n); trailing zeros stripped.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<double> entries);
  const std::vector<double>& entries() const { return entries_; }
  std::size_t support() const { return entries_.size(); }
  double at1(std::size_t n) const { return n >= 1 && n <= entries_.size() ? entries_[n - 1] : 0.0; }
  Sequence abs() const;
  bool is_zero() const { return entries_.empty(); }
  bool operator==(const Sequence& o) const { return entries_ == o.entries_; }

 private:
  std::vector<double> entries_;
};

// Concave piecewise-linear gauge φ with φ(0)=0, nondecreasing knot values and
// nonincreasing slopes; extends past the last knot with `final_slope`.
class ConcaveGauge {
 public:
  ConcaveGauge(std::vector<double> knots, std::vector<double> values, double final_slope = 0.0);
  static ConcaveGauge single_knot(double t, double v, double final_slope = 0.0);

  double operator()(double t) const;
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double final_slope() const { return final_slope_; }
  double slope(std::size_t segment) const;  // segment i covers [knots_[i], knots_[i+1])
  std::size_t segments() const { return knots_.size() - 1; }

  // Closed forms used by the gauge-condition measurements. Both require 0 < a <= b.
  double integral_phi_over_t(double a, double b) const;    // ∫_a^b φ(s)/s ds
  double integral_phi_over_t2(double a, double b) const;   // ∫_a^b φ(s)/s² ds
  double tail_integral_phi_over_t2(double a) const;        // ∫_a^∞ φ(s)/s² ds (+inf if slope>0)

  std::string format() const;  // s-expression form, shortest round-trip numbers

 private:
  std::vector<double> knots_;   // 0 = t_0 < t_1 < ... < t_K
  std::vector<double> values_;  // 0 = φ(t_0) < ...
  double final_slope_;
};

class Weight;
using WeightPtr = std::shared_ptr<const Weight>;

// Positive weight on the domain. Named forms keep enough structure for
// closed-form integration and endpoint-exponent analysis.
class Weight {
 public:
  struct Power { double alpha; };        // x^alpha
  struct OneMinusXInv {};                // 1/(1-x)   (unit interval)
  struct OneMinusX {};                   // 1-x       (unit interval)
  struct MaxInvOne {};                   // max(1/(1-x), 1) on the half line
  struct PhiOverT { ConcaveGauge phi; }; // φ(t)/t
  struct Explicit { StepFunction fn; };  // positive step; extends by last value
  struct Product { std::vector<WeightPtr> parts; };
  struct Reciprocal { WeightPtr inner; };
  using Node =
      std::variant<Power, OneMinusXInv, OneMinusX, MaxInvOne, PhiOverT, Explicit, Product, Reciprocal>;

  explicit Weight(Node node);
  static WeightPtr one();  // x^0
  static WeightPtr power(double alpha);
  static WeightPtr make(Node node);

  const Node& node() const { return node_; }
  double operator()(double x) const;  // x > 0
  bool is_one() const;

  // Points in (0, horizon) where the analytic form changes (weight poles,
  // gauge knots, explicit-step breakpoints). Always sorted.
  std::vector<double> knots(const Domain& d) const;
  // Local power exponent of the weight at x→0+, at x→1⁻, and at x→∞.
  double exponent_at_zero() const;
  double exponent_at_one() const;
  double exponent_at_infinity() const;

  std::string format() const;

 private:
  Node node_;
};

struct SpaceSpec;
using SpacePtr = std::shared_ptr<const SpaceSpec>;

// Sequence-space weight: w_n = n^alpha, optionally times explicit leading
// entries (extended by their last value).
struct SeqWeight {
  double alpha = 0.0;
  std::vector<double> entries;
  double at(std::size_t n) const;
  bool is_one() const { return alpha == 0.0 && entries.empty(); }
  bool is_pure_power() const { return entries.empty(); }
};

// Recursive description of a Banach ideal space. Function spaces and sequence
// spaces are distinct constructors; norms reject mixed use.
struct SpaceSpec {
  struct Lp { double p; WeightPtr w; Domain domain; };         // p in [1, inf]
  struct Lorentz { ConcaveGauge phi; };                        // Λ_φ on the half line
  struct Marcinkiewicz { ConcaveGauge phi; bool starred; };    // M_φ / M*_φ on the half line
  struct Cesaro { SpacePtr inner; };                           // ||C|f|||_X
  struct Tilde { SpacePtr inner; };                            // ||f̃||_X
  struct Weighted { SpacePtr inner; WeightPtr w; };            // ||f·w||_X
  struct SeqLp { double p; SeqWeight w; };
  struct SeqCesaro { SpacePtr inner; };
  struct SeqTilde { SpacePtr inner; };
  using Node = std::variant<Lp, Lorentz, Marcinkiewicz, Cesaro, Tilde, Weighted, SeqLp, SeqCesaro,
                            SeqTilde>;

  Node node;

  static SpacePtr lp(double p, WeightPtr w, Domain d);
  static SpacePtr lorentz(ConcaveGauge phi);
  static SpacePtr marcinkiewicz(ConcaveGauge phi, bool starred = false);
  static SpacePtr cesaro(SpacePtr inner);
  static SpacePtr tilde(SpacePtr inner);
  // Weighted(Weighted(X,v),w) collapses to Weighted(X, v·w).
  static SpacePtr weighted(SpacePtr inner, WeightPtr w);
  static SpacePtr seq_lp(double p, SeqWeight w = {});
  static SpacePtr seq_cesaro(SpacePtr inner);
  static SpacePtr seq_tilde(SpacePtr inner);

  bool is_sequence_space() const;
  // Domain of a function space (innermost Lp/Lorentz/Marcinkiewicz).
  Domain domain() const;
  std::string format() const;
};

// S-expression parser for SpaceSpec / Weight. Accepts head-call form
// "Ces(Lp 2 (pow -0.25) halfline)" and bare form "Lp 2 (pow 0) unit".
SpacePtr parse_space(const std::string& text);
WeightPtr parse_weight(const std::string& text);

// Shortest round-trip decimal formatting (to_chars); parse_number inverts it.
std::string format_number(double v);
double parse_number(const std::string& token);

// --- nontriviality -----------------------------------------------------------

enum class Triviality { NonTrivial, Trivial, Undecidable };

struct NontrivialityResult {
  Triviality verdict;
  // Witness parameter: on the half line, (1/x)χ_[a,∞) ∈ X; on [0,1], χ_[a,1] ∈ X;
  // for sequence specs, (1/n) ∈ X (witness unused).
  std::optional<double> witness_a;
  std::string note;
};

// Decides whether spec (a Cesaro/SeqCesaro space) contains a nonzero element,
// via the integrability of the witness family in the inner space.
NontrivialityResult nontriviality(const SpaceSpec& spec);

}  // namespace ceslab
