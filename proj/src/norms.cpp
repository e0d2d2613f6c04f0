#include "ceslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>

#include "ceslab/quadrature.hpp"

namespace ceslab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- weights

std::optional<double> weight_power(const Weight& w) {
  if (const auto* p = std::get_if<Weight::Power>(&w.node())) return p->alpha;
  if (const auto* pr = std::get_if<Weight::Product>(&w.node())) {
    double s = 0.0;
    for (const auto& part : pr->parts) {
      auto a = weight_power(*part);
      if (!a) return std::nullopt;
      s += *a;
    }
    return s;
  }
  if (const auto* r = std::get_if<Weight::Reciprocal>(&w.node())) {
    auto a = weight_power(*r->inner);
    if (!a) return std::nullopt;
    return -*a;
  }
  return std::nullopt;
}

bool weight_piecewise_const(const Weight& w) {
  if (std::holds_alternative<Weight::Explicit>(w.node())) return true;
  if (const auto* p = std::get_if<Weight::Power>(&w.node())) return p->alpha == 0.0;
  if (const auto* pr = std::get_if<Weight::Product>(&w.node())) {
    for (const auto& part : pr->parts)
      if (!weight_piecewise_const(*part)) return false;
    return true;
  }
  if (const auto* r = std::get_if<Weight::Reciprocal>(&w.node()))
    return weight_piecewise_const(*r->inner);
  return false;
}

void weight_check_domain(const Weight& w, DomainKind kind) {
  if (std::holds_alternative<Weight::OneMinusXInv>(w.node()) ||
      std::holds_alternative<Weight::OneMinusX>(w.node())) {
    if (kind != DomainKind::UnitInterval)
      throw DomainMismatch("weight " + w.format() + " is defined on the unit interval only");
  }
  if (std::holds_alternative<Weight::MaxInvOne>(w.node())) {
    if (kind != DomainKind::HalfLine)
      throw DomainMismatch("weight maxinv1 is defined on the half line only");
  }
  if (const auto* pr = std::get_if<Weight::Product>(&w.node()))
    for (const auto& part : pr->parts) weight_check_domain(*part, kind);
  if (const auto* r = std::get_if<Weight::Reciprocal>(&w.node()))
    weight_check_domain(*r->inner, kind);
}

struct WeightStack {
  std::vector<WeightPtr> parts;

  void push(const WeightPtr& w) {
    if (w && !w->is_one()) parts.push_back(w);
  }
  bool empty() const { return parts.empty(); }
  double eval(double x) const {
    double r = 1.0;
    for (const auto& w : parts) r *= (*w)(x);
    return r;
  }
  // For sup candidates at piece endpoints: piecewise-constant parts are read
  // strictly inside the (right-open) piece, continuous parts at x itself.
  double eval_mixed(double x, double inside) const {
    double r = 1.0;
    for (const auto& w : parts) r *= weight_piecewise_const(*w) ? (*w)(inside) : (*w)(x);
    return r;
  }
  double exp0() const {
    double s = 0.0;
    for (const auto& w : parts) s += w->exponent_at_zero();
    return s;
  }
  double exp1() const {
    double s = 0.0;
    for (const auto& w : parts) s += w->exponent_at_one();
    return s;
  }
  double expinf() const {
    double s = 0.0;
    for (const auto& w : parts) s += w->exponent_at_infinity();
    return s;
  }
  std::vector<double> raw_knots(const Domain& d) const {
    std::vector<double> out;
    for (const auto& w : parts) {
      auto k = w->knots(d);
      out.insert(out.end(), k.begin(), k.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::optional<double> as_power() const {
    double s = 0.0;
    for (const auto& w : parts) {
      auto a = weight_power(*w);
      if (!a) return std::nullopt;
      s += *a;
    }
    return s;
  }
  bool piecewise_const() const {
    for (const auto& w : parts)
      if (!weight_piecewise_const(*w)) return false;
    return true;
  }
  void check_domain(DomainKind kind) const {
    for (const auto& w : parts) weight_check_domain(*w, kind);
  }
};

// f·w as an exact step function, when every stack entry is piecewise constant.
std::optional<StepFunction> stack_apply_exact(const StepFunction& f, const WeightStack& st) {
  if (st.empty()) return f;
  if (!st.piecewise_const()) return std::nullopt;
  const double H = f.domain().horizon;
  auto knots = st.raw_knots(f.domain());
  auto grid = merge_breakpoints({&f.breakpoints(), &knots}, H);
  std::vector<double> vals(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double m = 0.5 * (grid[i] + grid[i + 1]);
    vals[i] = f(m) * st.eval(m);
  }
  return StepFunction(f.domain(), std::move(grid), std::move(vals));
}

// ---------------------------------------------------------------- Lp pieces

// Accumulates ∫ (base·w)^p over pieces with base(x) = vb + va/x.
struct Acc {
  double sum = 0.0;
  double err = 0.0;
  bool closed = true;
  bool infinite = false;
};

int small_integer(double p) {
  if (p >= 1.0 && p <= 6.0 && p == std::floor(p)) return static_cast<int>(p);
  return 0;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void add_piece_finite_p(Acc& acc, double l, double r, double vb, double va,
                        const WeightStack& st, double p) {
  if (acc.infinite || r <= l) return;
  if (vb == 0.0 && va == 0.0) return;

  if (auto alpha = st.as_power()) {
    const double ap = *alpha * p;
    if (va == 0.0) {
      const double piece = std::pow(std::fabs(vb), p) * quad::power_integral(ap, l, r);
      if (!std::isfinite(piece)) acc.infinite = true;
      else acc.sum += piece;
      return;
    }
    if (int ip = small_integer(p)) {
      // l > 0 here: pieces with va != 0 never start at the origin.
      double s = 0.0;
      for (int k = 0; k <= ip; ++k)
        s += binom(ip, k) * std::pow(vb, ip - k) * std::pow(va, k) *
             quad::power_integral(ap - k, l, r);
      acc.sum += s;
      return;
    }
  }

  // Quadrature with endpoint-exponent substitutions.
  double gamma_l = 0.0, gamma_r = 0.0;
  if (l == 0.0) {
    gamma_l = p * st.exp0();
    if (gamma_l <= -1.0) {
      acc.infinite = true;
      return;
    }
  }
  if (r == 1.0 && st.exp1() != 0.0) {
    const double base1 = vb + va;
    double base_exp = 0.0;
    if (std::fabs(base1) <= 1e-12 * (std::fabs(vb) + std::fabs(va))) base_exp = 1.0;
    gamma_r = p * (st.exp1() + base_exp);
    if (gamma_r <= -1.0) {
      acc.infinite = true;
      return;
    }
  }
  auto g = [vb, va, p, &st](double x) -> double {
    double base = vb + (va != 0.0 ? va / x : 0.0);
    if (base < 0.0) base = 0.0;  // fp noise at an exact zero of the base
    return std::pow(base * st.eval(x), p);
  };
  quad::Result res;
  const bool sing_l = gamma_l != 0.0;
  const bool sing_r = gamma_r != 0.0;
  if (sing_l && sing_r) {
    const double m = 0.5 * (l + r);
    auto r1 = quad::integrate_singular_left(g, l, m, gamma_l);
    auto r2 = quad::integrate_singular_right(g, m, r, gamma_r);
    res = {r1.value + r2.value, r1.error + r2.error};
  } else if (sing_l) {
    res = quad::integrate_singular_left(g, l, r, gamma_l);
  } else if (sing_r) {
    res = quad::integrate_singular_right(g, l, r, gamma_r);
  } else {
    res = quad::integrate(g, l, r);
  }
  if (!std::isfinite(res.value)) {
    acc.infinite = true;
    return;
  }
  acc.sum += res.value;
  acc.err += res.error;
  acc.closed = false;
}

// Tail ∫_H^∞ (A/x · w)^p for half-line averaged images.
void add_tail_finite_p(Acc& acc, double A, double H, const WeightStack& st, double p,
                       const Domain& d) {
  if (acc.infinite || A == 0.0) return;
  double x0 = H;
  for (double c : st.raw_knots(d)) {
    if (c <= x0) continue;
    add_piece_finite_p(acc, x0, c, 0.0, A, st, p);
    if (acc.infinite) return;
    x0 = c;
  }
  const double q = p * (st.expinf() - 1.0);
  if (q >= -1.0) {
    acc.infinite = true;
    return;
  }
  if (auto alpha = st.as_power()) {
    acc.sum += std::pow(A, p) * quad::power_integral_tail(p * (*alpha - 1.0), x0);
    return;
  }
  auto g = [A, p, &st](double x) -> double { return std::pow(A / x * st.eval(x), p); };
  auto res = quad::integrate_tail(g, x0, -q - 2.0);
  if (!std::isfinite(res.value)) {
    acc.infinite = true;
    return;
  }
  acc.sum += res.value;
  acc.err += res.error;
  acc.closed = false;
}

NormValue finish_finite_p(const Acc& acc, double p) {
  if (acc.infinite) return {kInf, 0.0, NormMethod::ClosedForm};
  NormValue out;
  out.value = std::pow(acc.sum, 1.0 / p);
  if (acc.closed) {
    out.method = NormMethod::ClosedForm;
    out.error_bound = 0.0;
  } else {
    out.method = NormMethod::Quadrature;
    out.error_bound =
        acc.sum > 0.0 ? acc.err * out.value / (p * acc.sum) : std::pow(acc.err, 1.0 / p);
  }
  return out;
}

// ---------------------------------------------------------------- ess sup

struct SupAcc {
  double best = 0.0;
  bool exact = true;
  bool infinite = false;

  void offer(double v) {
    if (std::isnan(v)) return;
    if (std::isinf(v)) infinite = true;
    else best = std::max(best, v);
  }
};

void sup_piece(SupAcc& s, double l, double r, double vb, double va, const WeightStack& st) {
  if (s.infinite || r <= l) return;
  if (vb == 0.0 && va == 0.0) return;
  const double mid = 0.5 * (l + r);
  auto g = [vb, va, mid, &st](double x) -> double {
    const double base = vb + (va != 0.0 ? va / x : 0.0);
    return std::fabs(base) * st.eval_mixed(x, mid);
  };
  // left endpoint
  if (l == 0.0) {
    const double e0 = st.exp0();
    if (e0 < 0.0) {
      s.infinite = true;  // vb != 0
      return;
    }
    if (e0 == 0.0) s.offer(g(1e-30));
  } else {
    s.offer(g(l));
  }
  // right endpoint (pole analysis only matters approaching 1 from the left)
  if (r == 1.0 && st.exp1() < 0.0) {
    const double base1 = vb + va;
    if (std::fabs(base1) > 1e-12 * (std::fabs(vb) + std::fabs(va))) {
      s.infinite = true;
      return;
    }
    s.offer(g(1.0 - 1e-9));  // base vanishes at the pole; finite limit
    s.exact = false;
  } else if (!(r == 1.0 && st.exp1() > 0.0)) {
    double v = g(r);
    if (!std::isfinite(v)) {
      v = g(r - 1e-12 * (r - l));
      s.exact = false;
    }
    s.offer(v);
  }
  // interior candidates
  if (auto alpha = st.as_power()) {
    if (*alpha != 0.0 && vb != 0.0 && va != 0.0) {
      const double xc = va * (1.0 - *alpha) / (*alpha * vb);
      if (xc > l && xc < r) s.offer(g(xc));
    }
    return;  // endpoints + critical point are exhaustive for power weights
  }
  if (st.piecewise_const()) return;  // w constant on the piece: monotone base
  // general stack: scan + golden refinement
  constexpr int kN = 33;
  int besti = -1;
  double bestv = -1.0;
  for (int i = 1; i < kN; ++i) {
    const double x = l + (r - l) * i / kN;
    const double v = g(x);
    if (v > bestv) {
      bestv = v;
      besti = i;
    }
  }
  if (besti >= 0) {
    const double a = l + (r - l) * (besti - 1) / kN;
    const double b = l + (r - l) * (besti + 1) / kN;
    s.offer(quad::golden_max(g, a, b));
    s.exact = false;
  }
}

void sup_tail(SupAcc& s, double A, double H, const WeightStack& st, const Domain& d) {
  if (s.infinite || A == 0.0) return;
  double x0 = H;
  for (double c : st.raw_knots(d)) {
    if (c <= x0) continue;
    sup_piece(s, x0, c, 0.0, A, st);
    if (s.infinite) return;
    x0 = c;
  }
  const double einf = st.expinf() - 1.0;
  if (einf > 0.0) {
    s.infinite = true;
    return;
  }
  auto g = [A, &st](double x) -> double { return A / x * st.eval(x); };
  if (st.as_power() || st.piecewise_const()) {
    // monotone beyond the last feature point: the sup is at x0 or the limit
    s.offer(g(x0));
    if (einf == 0.0) s.offer(g(1e15));
    return;
  }
  double prev = x0, best = g(x0), bestx = x0;
  for (int k = 1; k <= 50; ++k) {
    const double x = x0 * std::pow(2.0, k);
    const double v = g(x);
    if (v > best) {
      best = v;
      bestx = x;
    }
    prev = x;
  }
  (void)prev;
  s.offer(quad::golden_max(g, std::max(x0, bestx / 2.0), bestx * 2.0));
  s.offer(best);
  s.exact = false;
}

NormValue finish_sup(const SupAcc& s) {
  if (s.infinite) return {kInf, 0.0, NormMethod::ClosedForm};
  NormValue out;
  out.value = s.best;
  out.method = s.exact ? NormMethod::ClosedForm : NormMethod::Optimization;
  out.error_bound = s.exact ? 0.0 : 1e-9 * s.best;
  return out;
}

// ---------------------------------------------------------------- Lp drivers

void check_kind(DomainKind have, DomainKind want) {
  if (have != want)
    throw DomainMismatch(std::string("space expects a ") +
                         (want == DomainKind::UnitInterval ? "unit-interval" : "half-line") +
                         " function");
}

NormValue lp_norm_step(const StepFunction& f, const WeightStack& st, double p,
                       const Domain& spec_domain) {
  check_kind(f.domain().kind, spec_domain.kind);
  st.check_domain(f.domain().kind);
  const double H = f.domain().horizon;
  auto knots = st.raw_knots(f.domain());
  auto grid = merge_breakpoints({&f.breakpoints(), &knots}, H);
  if (std::isinf(p)) {
    SupAcc s;
    for (std::size_t i = 0; i + 1 < grid.size() && !s.infinite; ++i) {
      const double v = std::fabs(f(0.5 * (grid[i] + grid[i + 1])));
      sup_piece(s, grid[i], grid[i + 1], v, 0.0, st);
    }
    return finish_sup(s);
  }
  Acc acc;
  for (std::size_t i = 0; i + 1 < grid.size() && !acc.infinite; ++i) {
    const double v = std::fabs(f(0.5 * (grid[i] + grid[i + 1])));
    add_piece_finite_p(acc, grid[i], grid[i + 1], v, 0.0, st, p);
  }
  return finish_finite_p(acc, p);
}

NormValue lp_norm_image(const ops::CesaroImage& h, const WeightStack& st, double p,
                        const Domain& spec_domain) {
  check_kind(h.domain().kind, spec_domain.kind);
  st.check_domain(h.domain().kind);
  if (h.is_zero()) return {0.0, 0.0, NormMethod::ClosedForm};
  const double H = h.breakpoints().back();
  auto knots = st.raw_knots(h.domain());
  auto grid = merge_breakpoints({&h.breakpoints(), &knots}, H);
  const auto& hb = h.breakpoints();
  auto cell_of = [&](double x) -> std::size_t {
    auto it = std::upper_bound(hb.begin(), hb.end(), x);
    std::size_t j = static_cast<std::size_t>(it - hb.begin());
    if (j == 0) return 0;
    return std::min(j - 1, h.cells() - 1);
  };
  const bool tail = h.domain().kind == DomainKind::HalfLine;
  if (std::isinf(p)) {
    SupAcc s;
    for (std::size_t i = 0; i + 1 < grid.size() && !s.infinite; ++i) {
      const std::size_t j = cell_of(0.5 * (grid[i] + grid[i + 1]));
      sup_piece(s, grid[i], grid[i + 1], h.b(j), h.a(j), st);
    }
    if (tail && !s.infinite) sup_tail(s, h.tail_mass(), H, st, h.domain());
    return finish_sup(s);
  }
  Acc acc;
  for (std::size_t i = 0; i + 1 < grid.size() && !acc.infinite; ++i) {
    const std::size_t j = cell_of(0.5 * (grid[i] + grid[i + 1]));
    add_piece_finite_p(acc, grid[i], grid[i + 1], h.b(j), h.a(j), st, p);
  }
  if (tail) add_tail_finite_p(acc, h.tail_mass(), H, st, p, h.domain());
  return finish_finite_p(acc, p);
}

// ------------------------------------------------------- level integrals

// Measure of {h > λ} (λ > 0), exact per cell; +tail for half-line images.
double image_distribution(const ops::CesaroImage& h, double lambda) {
  const auto& bp = h.breakpoints();
  double meas = 0.0;
  for (std::size_t i = 0; i < h.cells(); ++i) {
    const double l = bp[i], r = bp[i + 1];
    const double a = h.a(i), b = h.b(i);
    if (a == 0.0) {
      if (b > lambda) meas += r - l;
      continue;
    }
    const double x0 = a / (lambda - b);  // crossing of b + a/x = λ
    if (a > 0.0) {                       // decreasing on the cell
      if (lambda <= b) meas += r - l;
      else if (x0 > l) meas += std::min(x0, r) - l;
    } else {  // increasing toward b
      if (lambda < b && x0 < r) meas += r - std::max(x0, l);
    }
  }
  if (h.domain().kind == DomainKind::HalfLine && h.tail_mass() > 0.0) {
    const double A = h.tail_mass(), H = bp.back();
    if (lambda < A / H) meas += A / lambda - H;
  }
  return meas;
}

// ∫ (h - λ)_+ exactly (log closed forms).
double image_excess(const ops::CesaroImage& h, double lambda) {
  const auto& bp = h.breakpoints();
  double total = 0.0;
  auto seg = [&](double xl, double xr, double a, double b) {
    if (xr <= xl) return;
    total += (b - lambda) * (xr - xl) + (a != 0.0 ? a * std::log(xr / xl) : 0.0);
  };
  for (std::size_t i = 0; i < h.cells(); ++i) {
    const double l = bp[i], r = bp[i + 1];
    const double a = h.a(i), b = h.b(i);
    if (a == 0.0) {
      if (b > lambda) total += (b - lambda) * (r - l);
      continue;
    }
    const double x0 = a / (lambda - b);
    if (a > 0.0) {
      if (lambda <= b) seg(l, r, a, b);
      else if (x0 > l) seg(l, std::min(x0, r), a, b);
    } else {
      if (lambda < b && x0 < r) seg(std::max(x0, l), r, a, b);
    }
  }
  if (h.domain().kind == DomainKind::HalfLine && h.tail_mass() > 0.0) {
    const double A = h.tail_mass(), H = bp.back();
    if (lambda < A / H) total += A * std::log(A / (lambda * H)) - A + lambda * H;
  }
  return total;
}

}  // namespace

double image_level_integral(const ops::CesaroImage& h, double t) {
  if (t <= 0.0 || h.is_zero()) return 0.0;
  const double hmax = h.max_value();
  if (image_distribution(h, hmax * 1e-18) <= t) {
    // whole support fits below t: ∫_0^t h* = ∫ h
    double total = h.integral_to(h.breakpoints().back());
    if (h.domain().kind == DomainKind::HalfLine && h.tail_mass() > 0.0) return kInf;
    return total;
  }
  double lo = 0.0, hi = hmax;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (image_distribution(h, mid) > t) lo = mid;
    else hi = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  return lambda * t + image_excess(h, lambda);
}

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::ClosedForm: return "closed-form";
    case NormMethod::Quadrature: return "quadrature";
    case NormMethod::Optimization: return "optimization";
  }
  return "unknown";
}

// --------------------------------------------------------------- Lorentz

NormValue lorentz_norm(const StepFunction& f, const ConcaveGauge& phi) {
  if (f.domain().kind != DomainKind::HalfLine)
    throw DomainMismatch("Lorentz norms are defined for half-line functions");
  const StepFunction fs = ops::decreasing_rearrangement(f);
  double total = 0.0;
  for (std::size_t i = 0; i < fs.cells(); ++i)
    total += fs.values()[i] * (phi(fs.breakpoints()[i + 1]) - phi(fs.breakpoints()[i]));
  return {total, 0.0, NormMethod::ClosedForm};
}

NormValue marcinkiewicz_norm(const StepFunction& f, const ConcaveGauge& phi, bool starred) {
  if (f.domain().kind != DomainKind::HalfLine)
    throw DomainMismatch("Marcinkiewicz norms are defined for half-line functions");
  const StepFunction fs = ops::decreasing_rearrangement(f);
  if (fs.is_zero()) return {0.0, 0.0, NormMethod::ClosedForm};
  double best = 0.0;
  if (starred) {
    // sup t·f*(t)/φ(t); t/φ(t) is nondecreasing, so cell suprema sit at the
    // right ends.
    for (std::size_t i = 0; i < fs.cells(); ++i) {
      const double r = fs.breakpoints()[i + 1];
      best = std::max(best, fs.values()[i] * r / phi(r));
    }
    return {best, 0.0, NormMethod::ClosedForm};
  }
  const PiecewiseLinear F = fs.partial_integral();
  std::vector<double> cand(fs.breakpoints().begin() + 1, fs.breakpoints().end());
  for (double t : phi.knots())
    if (t > 0.0) cand.push_back(t);
  for (double t : cand) best = std::max(best, F(t) / phi(t));
  // t→0+ and t→∞ limits
  best = std::max(best, fs.values().front() / phi.slope(0));
  if (phi.final_slope() == 0.0) best = std::max(best, f.abs().integral() / phi(1e300));
  return {best, 0.0, NormMethod::ClosedForm};
}

namespace {

NormValue lorentz_norm_image(const ops::CesaroImage& h, const ConcaveGauge& phi) {
  if (h.domain().kind != DomainKind::HalfLine)
    throw DomainMismatch("Lorentz norms are defined for half-line functions");
  if (h.is_zero()) return {0.0, 0.0, NormMethod::ClosedForm};
  if (phi.final_slope() > 0.0 && h.tail_mass() > 0.0)
    return {kInf, 0.0, NormMethod::ClosedForm};
  // ∫ h* dφ = Σ_j m_j·(K(t_{j+1}) - K(t_j)), K(t) = ∫_0^t h*.
  double total = 0.0, prevK = 0.0;
  const auto& kn = phi.knots();
  for (std::size_t j = 0; j + 1 < kn.size(); ++j) {
    const double K = image_level_integral(h, kn[j + 1]);
    total += phi.slope(j) * (K - prevK);
    prevK = K;
  }
  // beyond the last knot the slope is 0 here (positive slope handled above)
  NormValue out;
  out.value = total;
  out.method = NormMethod::Optimization;
  out.error_bound = 1e-10 * total;
  return out;
}

NormValue marcinkiewicz_norm_image(const ops::CesaroImage& h, const ConcaveGauge& phi,
                                   bool starred) {
  if (h.domain().kind != DomainKind::HalfLine)
    throw DomainMismatch("Marcinkiewicz norms are defined for half-line functions");
  if (h.is_zero()) return {0.0, 0.0, NormMethod::ClosedForm};
  if (h.tail_mass() > 0.0 && phi.final_slope() == 0.0)
    return {kInf, 0.0, NormMethod::ClosedForm};
  auto ratio = [&](double t) -> double {
    if (t <= 0.0) return 0.0;
    if (starred) {
      // h*(t) via the distribution function
      double lo = 0.0, hi = h.max_value();
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (image_distribution(h, mid) > t) lo = mid;
        else hi = mid;
      }
      return t * 0.5 * (lo + hi) / phi(t);
    }
    return image_level_integral(h, t) / phi(t);
  };
  double best = 0.0, bestt = 1.0;
  for (int k = -40; k <= 40; ++k) {
    const double t = std::pow(2.0, k);
    const double v = ratio(t);
    if (v > best) {
      best = v;
      bestt = t;
    }
  }
  best = std::max(best, quad::golden_max(ratio, bestt / 2.0, bestt * 2.0));
  NormValue out;
  out.value = best;
  out.method = NormMethod::Optimization;
  out.error_bound = 1e-6 * best;
  return out;
}

// --------------------------------------------------------------- dispatch

NormValue norm_step_rec(const StepFunction& f, const SpaceSpec& s, WeightStack st);

NormValue norm_image_rec(const ops::CesaroImage& h, const SpaceSpec& s, WeightStack st) {
  return std::visit(
      [&](const auto& n) -> NormValue {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SpaceSpec::Lp>) {
          st.push(n.w);
          return lp_norm_image(h, st, n.p, n.domain);
        } else if constexpr (std::is_same_v<T, SpaceSpec::Weighted>) {
          st.push(n.w);
          return norm_image_rec(h, *n.inner, std::move(st));
        } else if constexpr (std::is_same_v<T, SpaceSpec::Lorentz>) {
          if (!st.empty())
            throw Unsupported("weighted Lorentz norms of averaged images are not supported");
          return lorentz_norm_image(h, n.phi);
        } else if constexpr (std::is_same_v<T, SpaceSpec::Marcinkiewicz>) {
          if (!st.empty())
            throw Unsupported(
                "weighted Marcinkiewicz norms of averaged images are not supported");
          return marcinkiewicz_norm_image(h, n.phi, n.starred);
        } else if constexpr (std::is_same_v<T, SpaceSpec::Cesaro> ||
                             std::is_same_v<T, SpaceSpec::Tilde>) {
          throw Unsupported("iterated Cesàro/level norms are not supported");
        } else {
          throw DomainMismatch("sequence space applied to a function argument");
        }
      },
      s.node);
}

NormValue norm_step_rec(const StepFunction& f, const SpaceSpec& s, WeightStack st) {
  return std::visit(
      [&](const auto& n) -> NormValue {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SpaceSpec::Lp>) {
          st.push(n.w);
          return lp_norm_step(f, st, n.p, n.domain);
        } else if constexpr (std::is_same_v<T, SpaceSpec::Weighted>) {
          st.push(n.w);
          return norm_step_rec(f, *n.inner, std::move(st));
        } else if constexpr (std::is_same_v<T, SpaceSpec::Cesaro>) {
          auto g = stack_apply_exact(f, st);
          if (!g)
            throw Unsupported(
                "weights outside a Cesàro space must be explicit step weights");
          return norm_image_rec(ops::cesaro(g->abs()), *n.inner, {});
        } else if constexpr (std::is_same_v<T, SpaceSpec::Tilde>) {
          auto g = stack_apply_exact(f, st);
          if (!g)
            throw Unsupported("weights outside a level space must be explicit step weights");
          return norm_step_rec(ops::majorant(*g), *n.inner, {});
        } else if constexpr (std::is_same_v<T, SpaceSpec::Lorentz>) {
          auto g = stack_apply_exact(f, st);
          if (!g) throw Unsupported("weighted Lorentz norms need explicit step weights");
          return lorentz_norm(*g, n.phi);
        } else if constexpr (std::is_same_v<T, SpaceSpec::Marcinkiewicz>) {
          auto g = stack_apply_exact(f, st);
          if (!g)
            throw Unsupported("weighted Marcinkiewicz norms need explicit step weights");
          return marcinkiewicz_norm(*g, n.phi, n.starred);
        } else {
          throw DomainMismatch("sequence space applied to a function argument");
        }
      },
      s.node);
}

}  // namespace

NormValue norm(const StepFunction& f, const SpaceSpec& space) {
  return norm_step_rec(f, space, {});
}

NormValue norm(const ops::CesaroImage& h, const SpaceSpec& space) {
  return norm_image_rec(h, space, {});
}

// --------------------------------------------------------------- sequences

namespace {

NormValue seq_lp_norm(const Sequence& x, double p, const SeqWeight& w) {
  NormValue out;
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t n = 1; n <= x.support(); ++n)
      best = std::max(best, std::fabs(x.at1(n)) * w.at(n));
    out.value = best;
    return out;
  }
  double s = 0.0;
  for (std::size_t n = 1; n <= x.support(); ++n)
    s += std::pow(std::fabs(x.at1(n)) * w.at(n), p);
  out.value = std::pow(s, 1.0 / p);
  return out;
}

NormValue seq_cesaro_norm(const Sequence& x, const SpaceSpec& inner) {
  const auto* lp = std::get_if<SpaceSpec::SeqLp>(&inner.node);
  if (!lp) throw Unsupported("discrete Cesàro norms support a seq-Lp inner space only");
  if (x.is_zero()) return {0.0, 0.0, NormMethod::ClosedForm};
  const Sequence y = x.abs();
  const std::size_t L = y.support();
  const std::size_t M = std::max<std::size_t>(8 * L, 4096);
  const auto c = ops::cesaro_seq(y, M + 1);
  double S = 0.0;
  for (double v : y.entries()) S += v;
  const double p = lp->p;
  const SeqWeight& w = lp->w;
  // beyond the list, explicit entries extend by their last value
  const double wtail = w.entries.empty() ? 1.0 : w.entries.back();

  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t n = 1; n <= M + 1; ++n) best = std::max(best, c[n - 1] * w.at(n));
    if (S > 0.0) {
      if (w.alpha > 1.0) return {kInf, 0.0, NormMethod::ClosedForm};
      if (w.alpha == 1.0) best = std::max(best, S * wtail);
    }
    return {best, 0.0, NormMethod::ClosedForm};
  }
  double sum = 0.0;
  for (std::size_t n = 1; n <= M; ++n) sum += std::pow(c[n - 1] * w.at(n), p);
  double err = 0.0;
  bool bracketed = false;
  if (S > 0.0) {
    const double q = (1.0 - w.alpha) * p;  // Σ_{n>M} n^{-q}
    if (q <= 1.0) return {kInf, 0.0, NormMethod::ClosedForm};
    const double coef = std::pow(S * wtail, p);
    // midpoint rule: Σ_{n>M} n^{-q} ≈ ∫_{M+1/2}^∞ x^{-q} dx, second-order error
    const double Md = static_cast<double>(M);
    sum += coef * std::pow(Md + 0.5, 1.0 - q) / (q - 1.0);
    err = coef * q * std::pow(Md, -q - 1.0) / 8.0;
    bracketed = true;
  }
  NormValue out;
  out.value = std::pow(sum, 1.0 / p);
  out.method = bracketed ? NormMethod::Quadrature : NormMethod::ClosedForm;
  out.error_bound = sum > 0.0 ? err * out.value / (p * sum) : 0.0;
  return out;
}

}  // namespace

Sequence seq_majorant(const Sequence& x) {
  std::vector<double> v(x.entries().size());
  double running = 0.0;
  for (std::size_t i = v.size(); i-- > 0;) {
    running = std::max(running, std::fabs(x.entries()[i]));
    v[i] = running;
  }
  return Sequence(std::move(v));
}

NormValue seq_norm(const Sequence& x, const SpaceSpec& space) {
  return std::visit(
      [&](const auto& n) -> NormValue {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SpaceSpec::SeqLp>) {
          return seq_lp_norm(x, n.p, n.w);
        } else if constexpr (std::is_same_v<T, SpaceSpec::SeqCesaro>) {
          return seq_cesaro_norm(x, *n.inner);
        } else if constexpr (std::is_same_v<T, SpaceSpec::SeqTilde>) {
          return seq_norm(seq_majorant(x), *n.inner);
        } else {
          throw DomainMismatch("function space applied to a sequence argument");
        }
      },
      space.node);
}

}  // namespace ceslab
