#include "ceslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ceslab::quad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 15-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr double kNodes[8] = {
    0.0,
    0.2011940939974345223006283033945962078128,
    0.3941513470775633698972073709810454683627,
    0.5709721726085388475372267372539106412383,
    0.7244177313601700474161860546139380096308,
    0.8482065834104272162006483207742168513662,
    0.9372733924007059043077589477102094712439,
    0.9879925180204854284895657185866125811469};
constexpr double kWeights[8] = {
    0.2025782419255612728806201999675193148386,
    0.1984314853271115764561183264438393248186,
    0.1861610000155622110268005618664228245062,
    0.1662692058169939335532008604812088111309,
    0.1395706779261543144478047945110283225208,
    0.1071592204671719350118695466858693034155,
    0.0703660474881081247092674164506673384667,
    0.0307532419961172683546283935772044177217};

double gl15(const Fn& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = kWeights[0] * g(c);
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kNodes[i];
    s += kWeights[i] * (g(c - dx) + g(c + dx));
  }
  return s * h;
}

void adapt(const Fn& g, double a, double b, double whole, double tol, int depth,
           Result& acc) {
  const double m = 0.5 * (a + b);
  const double left = gl15(g, a, m);
  const double right = gl15(g, m, b);
  const double delta = std::abs(left + right - whole);
  if (!std::isfinite(delta)) {
    acc.value = left + right;  // propagate inf/nan upward
    acc.error = kInf;
    return;
  }
  if (depth <= 0 || delta <= tol || m <= a || m >= b) {
    acc.value += left + right;
    acc.error += delta;
    return;
  }
  adapt(g, a, m, left, 0.5 * tol, depth - 1, acc);
  if (!std::isfinite(acc.value)) return;
  adapt(g, m, b, right, 0.5 * tol, depth - 1, acc);
}

Result integrate_once(const Fn& g, double a, double b, double tol_abs, int max_depth) {
  Result acc;
  const double whole = gl15(g, a, b);
  if (!std::isfinite(whole)) return {whole, kInf};
  adapt(g, a, b, whole, tol_abs, max_depth, acc);
  return acc;
}

}  // namespace

double power_integral(double beta, double a, double b) {
  if (b <= a) return 0.0;
  if (a <= 0.0) {
    if (beta <= -1.0) return kInf;
    a = 0.0;
  }
  if (beta == -1.0) return std::log(b / a);
  const double q = beta + 1.0;
  const double hi = std::pow(b, q);
  const double lo = (a == 0.0) ? 0.0 : std::pow(a, q);
  return (hi - lo) / q;
}

double power_integral_tail(double beta, double a) {
  if (beta >= -1.0) return kInf;
  return -std::pow(a, beta + 1.0) / (beta + 1.0);
}

Result integrate(const Fn& g, double a, double b, double rel_tol, int max_depth) {
  if (b <= a) return {0.0, 0.0};
  const double coarse = std::abs(gl15(g, a, b));
  double scale = std::max(coarse, 1e-300);
  Result r = integrate_once(g, a, b, rel_tol * scale, max_depth);
  // If the coarse pass badly underestimated the magnitude, redo with a
  // tolerance anchored to the refined value.
  const double refined = std::abs(r.value);
  if (std::isfinite(refined) && refined > 10.0 * scale) {
    r = integrate_once(g, a, b, rel_tol * refined, max_depth);
  }
  return r;
}

Result integrate_singular_left(const Fn& g, double a, double b, double gamma,
                               double rel_tol) {
  if (b <= a) return {0.0, 0.0};
  // x = a + u^m: integrand -> g(a+u^m)·m·u^(m-1), exponent m(1+gamma)-1 at 0.
  const int m = std::clamp(static_cast<int>(std::ceil(2.0 / (1.0 + gamma))), 2, 12);
  const double top = std::pow(b - a, 1.0 / m);
  auto h = [&](double u) -> double {
    if (u <= 0.0) return 0.0;
    const double um = std::pow(u, m);
    if (um <= 0.0) return 0.0;
    return g(a + um) * m * std::pow(u, m - 1);
  };
  return integrate(h, 0.0, top, rel_tol);
}

Result integrate_singular_right(const Fn& g, double a, double b, double gamma,
                                double rel_tol) {
  if (b <= a) return {0.0, 0.0};
  const int m = std::clamp(static_cast<int>(std::ceil(2.0 / (1.0 + gamma))), 2, 12);
  const double top = std::pow(b - a, 1.0 / m);
  auto h = [&](double u) -> double {
    if (u <= 0.0) return 0.0;
    const double um = std::pow(u, m);
    if (um <= 0.0) return 0.0;
    return g(b - um) * m * std::pow(u, m - 1);
  };
  return integrate(h, 0.0, top, rel_tol);
}

Result integrate_tail(const Fn& g, double x0, double gamma_u, double rel_tol) {
  auto h = [&](double u) -> double {
    if (u <= 0.0) return 0.0;
    const double x = x0 / u;
    return g(x) * x0 / (u * u);
  };
  if (gamma_u > 0.0) return integrate(h, 0.0, 1.0, rel_tol);
  return integrate_singular_left(h, 0.0, 1.0, gamma_u, rel_tol);
}

double golden_max(const Fn& g, double a, double b, int iters) {
  constexpr double kPhi = 0.6180339887498948482;
  double x1 = b - kPhi * (b - a);
  double x2 = a + kPhi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int i = 0; i < iters && b - a > 0.0; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kPhi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kPhi * (b - a);
      f1 = g(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace ceslab::quad
