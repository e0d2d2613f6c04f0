#pragma once

// Exact operator images of step functions: Cesàro averages (rational cells
// b + a/x with an analytic 1/x tail), the iterated average, the Copson
// operator, the level/majorant function, dilations, the unit-interval
// substitution operator, and decreasing rearrangement.

#include <vector>

#include "ceslab/core.hpp"

namespace ceslab::ops {

// C f(x) = (1/x)∫_0^x f. On each cell of f this is b_i + a_i/x (a_1 = 0, so
// the image is finite at 0+); beyond a half-line horizon it is F(horizon)/x.
class CesaroImage {
 public:
  static CesaroImage of(const StepFunction& f);
  // Image with prescribed partial integrals F at grid points (F_0 = 0,
  // F nondecreasing yields a nonnegative image). Used by the dual-norm ascent.
  static CesaroImage from_profile(Domain d, std::vector<double> grid, const std::vector<double>& F);

  const Domain& domain() const { return domain_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t cells() const { return a_.size(); }
  double a(std::size_t i) const { return a_[i]; }
  double b(std::size_t i) const { return b_[i]; }
  // ∫_0^{horizon} of the underlying function; the 1/x tail coefficient.
  double tail_mass() const { return tail_mass_; }
  bool is_zero() const;

  double operator()(double x) const;  // x >= 0; continuous on (0, ∞)
  double max_value() const;           // sup over (0, ∞) (cells are monotone)

  // ∫_0^x Cf with exact log terms; valid for x beyond the horizon too.
  double integral_to(double x) const;

 private:
  Domain domain_;
  std::vector<double> breakpoints_;
  std::vector<double> a_, b_;
  double tail_mass_ = 0.0;
  std::vector<double> cum_;  // ∫_0^{t_i} Cf, precomputed closed form
  void build_cumulative();
};

CesaroImage cesaro(const StepFunction& f);

// C(Cf): evaluates (1/x)∫_0^x Cf exactly (log closed forms, including the
// tail region where Cf = tail_mass/x).
class CesaroOfCesaro {
 public:
  explicit CesaroOfCesaro(const StepFunction& f) : image_(CesaroImage::of(f)) {}
  double operator()(double x) const;
  const CesaroImage& inner() const { return image_; }

 private:
  CesaroImage image_;
};

// Copson operator on [0,1]: C*f(x) = ∫_x^1 f(t)/t dt, exact log closed form.
// Defined for x in (0, 1]; diverges at 0+ when f does not vanish near 0.
class CopsonImage {
 public:
  explicit CopsonImage(const StepFunction& f);
  double operator()(double x) const;

 private:
  StepFunction f_;
};

CopsonImage copson(const StepFunction& f);

// Level function f̃(x) = ess sup_{t >= x} |f(t)|: suffix maximum, same grid.
StepFunction majorant(const StepFunction& f);

// σ_τ f(x) = f(x/τ); on the unit interval the image is supported on
// [0, min(1, τ)]. τ > 0.
StepFunction dilation(const StepFunction& f, double tau);

// σ_m for sequences, m >= 1: each entry repeated m times.
Sequence dilation_seq(const Sequence& x, int m);

// First n_terms of the discrete averages (Cx)_n = (1/n)·Σ_{k<=n} x_k.
std::vector<double> cesaro_seq(const Sequence& x, std::size_t n_terms);

// Unit-interval substitution machinery: σ(t) = t/d(t) with d(t) = t + e - e·t;
// σ is an increasing bijection of [0,1] with closed-form inverse.
double subst_d(double t);
double subst_sigma(double t);
double subst_sigma_inv(double t);
// T h = h ∘ σ, exact step function (breakpoints map through σ⁻¹).
StepFunction substitution_T(const StepFunction& h);

// Decreasing rearrangement f* (ties keep original cell order). Same domain.
StepFunction decreasing_rearrangement(const StepFunction& f);

}  // namespace ceslab::ops
