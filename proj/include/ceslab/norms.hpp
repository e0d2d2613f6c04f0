#pragma once

// Norm evaluation for step functions, averaged images, and sequences over the
// recursive space algebra.  Closed forms are used wherever the data admits
// them (power weights, integer exponents, gauge integrals); everything else
// falls back to certified adaptive quadrature or bracketed tails.

#include <cmath>
#include <string>

#include "ceslab/core.hpp"
#include "ceslab/operators.hpp"

namespace ceslab {

enum class NormMethod { ClosedForm, Quadrature, Optimization };

struct NormValue {
  double value = 0.0;
  double error_bound = 0.0;  // absolute; 0 for exact paths
  NormMethod method = NormMethod::ClosedForm;

  bool finite() const { return std::isfinite(value); }
};

const char* norm_method_name(NormMethod m);

// ‖f‖_X for a step function; throws DomainMismatch / Unsupported as needed.
NormValue norm(const StepFunction& f, const SpaceSpec& space);

// ‖h‖_X for an averaged image h = C|g| (half-line images carry a 1/x tail).
NormValue norm(const ops::CesaroImage& h, const SpaceSpec& space);

// ‖x‖_X for a finitely supported sequence.
NormValue seq_norm(const Sequence& x, const SpaceSpec& space);

// Lorentz norm ∫ f^* dφ (exact for steps).
NormValue lorentz_norm(const StepFunction& f, const ConcaveGauge& phi);
// Marcinkiewicz norm sup F^*(t)/φ(t), or sup t·f^*(t)/φ(t) when starred.
NormValue marcinkiewicz_norm(const StepFunction& f, const ConcaveGauge& phi,
                             bool starred);

// ∫_0^t h^* for an averaged image, via inf_λ [λt + ∫(h-λ)_+].
double image_level_integral(const ops::CesaroImage& h, double t);

// Suffix maximum of |x|, the sequence analogue of the level function.
Sequence seq_majorant(const Sequence& x);

}  // namespace ceslab
