#pragma once

// Numeric integration used by the norm engine: exact power integrals where
// possible, otherwise adaptive 15-point Gauss-Legendre with bisection and
// exponent-aware endpoint substitutions.

#include <functional>

namespace ceslab::quad {

inline constexpr double kRelTol = 1e-10;
inline constexpr int kMaxDepth = 60;

struct Result {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
};

using Fn = std::function<double(double)>;

// ∫_a^b x^beta dx, 0 <= a < b; +inf when divergent at 0 (beta <= -1, a = 0).
double power_integral(double beta, double a, double b);
// ∫_a^∞ x^beta dx, a > 0; +inf unless beta < -1.
double power_integral_tail(double beta, double a);

// Adaptive integration of a smooth integrand.
Result integrate(const Fn& g, double a, double b, double rel_tol = kRelTol,
                 int max_depth = kMaxDepth);

// Integrand behaves like (x-a)^gamma·(smooth) near a with gamma in (-1, 1):
// substitutes x = a + u^m so the transformed integrand is C^1 at 0.
Result integrate_singular_left(const Fn& g, double a, double b, double gamma,
                               double rel_tol = kRelTol);
// Same with the singularity at b, i.e. |x-b|^gamma behaviour.
Result integrate_singular_right(const Fn& g, double a, double b, double gamma,
                                double rel_tol = kRelTol);

// ∫_{x0}^∞ g dx via x = x0/u on (0,1]; gamma_u > -1 is the u-exponent of the
// transformed integrand at u→0 (for g ~ x^q this is -q-2).
Result integrate_tail(const Fn& g, double x0, double gamma_u, double rel_tol = kRelTol);

// Golden-section maximizer for unimodal refinement on [a, b].
double golden_max(const Fn& g, double a, double b, int iters = 80);

}  // namespace ceslab::quad
