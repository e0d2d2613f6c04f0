#include "ceslab/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ceslab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const std::string& msg) {
  if (!cond) throw ParseError(msg);
}
}  // namespace

std::string Domain::describe() const {
  return kind == DomainKind::UnitInterval ? "unit" : "halfline";
}

// ---------------------------------------------------------------- numbers

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& token) {
  if (token == "inf") return kInf;
  if (token == "-inf") return -kInf;
  double v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError("not a number: '" + token + "'");
  return v;
}

// ---------------------------------------------------------------- PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  require(xs_.size() == ys_.size() && xs_.size() >= 1, "piecewise-linear: size mismatch");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    require(xs_[i] > xs_[i - 1], "piecewise-linear: x not increasing");
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  double slope = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + slope * (x - xs_[i]);
}

// ---------------------------------------------------------------- StepFunction

StepFunction::StepFunction(Domain d, std::vector<double> breakpoints, std::vector<double> values)
    : domain_(d), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  require(breakpoints_.size() >= 2, "step function: need at least one cell");
  require(values_.size() + 1 == breakpoints_.size(), "step function: values/breakpoints mismatch");
  require(breakpoints_.front() == 0.0, "step function: breakpoints must start at 0");
  if (domain_.kind == DomainKind::UnitInterval)
    require(breakpoints_.back() == 1.0, "step function: unit-interval breakpoints must end at 1");
  else
    require(breakpoints_.back() == domain_.horizon && domain_.horizon > 0.0,
            "step function: last breakpoint must equal the horizon");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    require(breakpoints_[i] > breakpoints_[i - 1], "step function: breakpoints must increase");
  for (double v : values_) require(std::isfinite(v), "step function: values must be finite");
}

StepFunction StepFunction::zero(Domain d) {
  return StepFunction(d, {0.0, d.horizon}, {0.0});
}

StepFunction StepFunction::indicator(Domain d, double lo, double hi, double value) {
  require(0.0 <= lo && lo < hi && hi <= d.horizon, "indicator: need 0 <= lo < hi <= horizon");
  std::vector<double> bp{0.0};
  std::vector<double> vals;
  if (lo > 0.0) {
    bp.push_back(lo);
    vals.push_back(0.0);
  }
  bp.push_back(hi);
  vals.push_back(value);
  if (hi < d.horizon) {
    bp.push_back(d.horizon);
    vals.push_back(0.0);
  }
  return StepFunction(d, std::move(bp), std::move(vals));
}

double StepFunction::operator()(double x) const {
  if (x < 0.0 || x >= breakpoints_.back()) return 0.0;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
  return values_[i - 1];
}

StepFunction StepFunction::abs() const {
  std::vector<double> vals(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) vals[i] = std::fabs(values_[i]);
  return StepFunction(domain_, breakpoints_, std::move(vals));
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double StepFunction::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    s += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  return s;
}

double StepFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

PiecewiseLinear StepFunction::partial_integral() const {
  std::vector<double> ys(breakpoints_.size(), 0.0);
  for (std::size_t i = 0; i < values_.size(); ++i)
    ys[i + 1] = ys[i] + values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  return PiecewiseLinear(breakpoints_, std::move(ys));
}

std::vector<double> merge_breakpoints(const std::vector<const std::vector<double>*>& sets,
                                      double horizon) {
  std::vector<double> all{0.0, horizon};
  for (const auto* s : sets)
    for (double t : *s)
      if (t > 0.0 && t < horizon) all.push_back(t);
  std::sort(all.begin(), all.end());
  const double tol = kBreakpointMergeRel * horizon;
  std::vector<double> out;
  for (double t : all) {
    if (!out.empty() && t - out.back() <= tol) continue;
    out.push_back(t);
  }
  // never merge away the horizon itself
  if (out.back() != horizon) {
    if (horizon - out.back() <= tol) out.back() = horizon;
    else out.push_back(horizon);
  }
  return out;
}

StepFunction resample(const StepFunction& f, const std::vector<double>& grid) {
  std::vector<double> vals(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    vals[i] = f(0.5 * (grid[i] + grid[i + 1]));
  Domain d = f.domain();
  if (d.kind == DomainKind::HalfLine) d.horizon = grid.back();
  return StepFunction(d, grid, std::move(vals));
}

StepFunction lin_comb(double a, const StepFunction& f, double b, const StepFunction& g) {
  if (f.domain().kind != g.domain().kind)
    throw DomainMismatch("lin_comb: domain kinds differ");
  double horizon = std::max(f.domain().horizon, g.domain().horizon);
  auto grid = merge_breakpoints({&f.breakpoints(), &g.breakpoints()}, horizon);
  std::vector<double> vals(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double mid = 0.5 * (grid[i] + grid[i + 1]);
    vals[i] = a * f(mid) + b * g(mid);
  }
  Domain d = f.domain();
  d.horizon = horizon;
  return StepFunction(d, std::move(grid), std::move(vals));
}

std::string StepFunction::to_json() const {
  nlohmann::json j;
  j["domain"] = {{"kind", domain_.describe()}, {"horizon", domain_.horizon}};
  j["breakpoints"] = breakpoints_;
  j["values"] = values_;
  return j.dump();
}

StepFunction StepFunction::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("domain") && j.contains("breakpoints") && j.contains("values"),
          "step function JSON needs domain/breakpoints/values");
  const auto& jd = j["domain"];
  require(jd.contains("kind"), "domain needs a kind");
  std::string kind = jd["kind"].get<std::string>();
  Domain d;
  if (kind == "unit") {
    d = Domain::unit();
  } else if (kind == "halfline") {
    require(jd.contains("horizon"), "halfline domain needs a horizon");
    d = Domain::half_line(jd["horizon"].get<double>());
  } else {
    throw ParseError("unknown domain kind '" + kind + "'");
  }
  auto bp = j["breakpoints"].get<std::vector<double>>();
  auto vals = j["values"].get<std::vector<double>>();
  return StepFunction(d, std::move(bp), std::move(vals));
}

// ---------------------------------------------------------------- Sequence

Sequence::Sequence(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double v : entries_) require(std::isfinite(v), "sequence: entries must be finite");
  while (!entries_.empty() && entries_.back() == 0.0) entries_.pop_back();
}

Sequence Sequence::abs() const {
  std::vector<double> e(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) e[i] = std::fabs(entries_[i]);
  return Sequence(std::move(e));
}

// ---------------------------------------------------------------- ConcaveGauge

ConcaveGauge::ConcaveGauge(std::vector<double> knots, std::vector<double> values,
                           double final_slope)
    : knots_(std::move(knots)), values_(std::move(values)), final_slope_(final_slope) {
  require(knots_.size() == values_.size() && knots_.size() >= 2, "gauge: need >= 2 knots");
  require(knots_.front() == 0.0 && values_.front() == 0.0, "gauge: must start at (0, 0)");
  require(final_slope_ >= 0.0, "gauge: final slope must be >= 0");
  double prev_slope = kInf;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    require(knots_[i] > knots_[i - 1], "gauge: knots must increase");
    require(values_[i] > values_[i - 1], "gauge: values must increase");
    double s = (values_[i] - values_[i - 1]) / (knots_[i] - knots_[i - 1]);
    require(s <= prev_slope * (1.0 + 1e-12), "gauge: slopes must not increase (concavity)");
    prev_slope = s;
  }
  require(final_slope_ <= prev_slope * (1.0 + 1e-12), "gauge: final slope breaks concavity");
}

ConcaveGauge ConcaveGauge::single_knot(double t, double v, double final_slope) {
  return ConcaveGauge({0.0, t}, {0.0, v}, final_slope);
}

double ConcaveGauge::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= knots_.back()) return values_.back() + final_slope_ * (t - knots_.back());
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return values_[i] + slope(i) * (t - knots_[i]);
}

double ConcaveGauge::slope(std::size_t segment) const {
  return (values_[segment + 1] - values_[segment]) / (knots_[segment + 1] - knots_[segment]);
}

namespace {
// ∫_a^b (c + m·s)/s ds and ∫_a^b (c + m·s)/s² ds for one linear piece.
double int_lin_over_t(double c, double m, double a, double b) {
  return c * std::log(b / a) + m * (b - a);
}
double int_lin_over_t2(double c, double m, double a, double b) {
  return c * (1.0 / a - 1.0 / b) + m * std::log(b / a);
}
}  // namespace

double ConcaveGauge::integral_phi_over_t(double a, double b) const {
  require(0.0 < a && a <= b, "gauge integral: need 0 < a <= b");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    double lo = std::max(a, knots_[i]);  // > 0 since a > 0
    double hi = std::min(b, knots_[i + 1]);
    if (lo >= hi) continue;
    double m = slope(i);
    double c = values_[i] - m * knots_[i];
    total += int_lin_over_t(c, m, lo, hi);
  }
  if (b > knots_.back()) {
    double lo = std::max(a, knots_.back());
    double c = values_.back() - final_slope_ * knots_.back();
    total += int_lin_over_t(c, final_slope_, lo, b);
  }
  return total;
}

double ConcaveGauge::integral_phi_over_t2(double a, double b) const {
  require(0.0 < a && a <= b, "gauge integral: need 0 < a <= b");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    double lo = std::max(a, knots_[i]);
    double hi = std::min(b, knots_[i + 1]);
    if (lo >= hi) continue;
    double m = slope(i);
    double c = values_[i] - m * knots_[i];
    total += int_lin_over_t2(c, m, lo, hi);
  }
  if (b > knots_.back()) {
    double lo = std::max(a, knots_.back());
    double c = values_.back() - final_slope_ * knots_.back();
    total += int_lin_over_t2(c, final_slope_, lo, b);
  }
  return total;
}

double ConcaveGauge::tail_integral_phi_over_t2(double a) const {
  require(a > 0.0, "gauge tail integral: need a > 0");
  if (final_slope_ > 0.0) return kInf;
  double start = std::max(a, knots_.back());
  double head = start > a ? integral_phi_over_t2(a, start) : 0.0;
  return head + values_.back() / start;
}

std::string ConcaveGauge::format() const {
  std::string s = "(gauge";
  for (std::size_t i = 0; i < knots_.size(); ++i)
    s += " " + format_number(knots_[i]) + " " + format_number(values_[i]);
  s += " slope " + format_number(final_slope_) + ")";
  return s;
}

// ---------------------------------------------------------------- Weight

Weight::Weight(Node node) : node_(std::move(node)) {
  if (const auto* e = std::get_if<Explicit>(&node_)) {
    for (double v : e->fn.values()) require(v > 0.0, "explicit weight must be strictly positive");
  }
  if (const auto* p = std::get_if<Power>(&node_))
    require(std::isfinite(p->alpha), "power weight: alpha must be finite");
}

WeightPtr Weight::one() { return power(0.0); }
WeightPtr Weight::power(double alpha) { return std::make_shared<Weight>(Power{alpha}); }
WeightPtr Weight::make(Node node) { return std::make_shared<Weight>(std::move(node)); }

double Weight::operator()(double x) const {
  return std::visit(
      [x](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Power>) {
          return n.alpha == 0.0 ? 1.0 : std::pow(x, n.alpha);
        } else if constexpr (std::is_same_v<T, OneMinusXInv>) {
          return 1.0 / (1.0 - x);
        } else if constexpr (std::is_same_v<T, OneMinusX>) {
          return 1.0 - x;
        } else if constexpr (std::is_same_v<T, MaxInvOne>) {
          return x < 1.0 ? 1.0 / (1.0 - x) : 1.0;
        } else if constexpr (std::is_same_v<T, PhiOverT>) {
          return n.phi(x) / x;
        } else if constexpr (std::is_same_v<T, Explicit>) {
          const auto& f = n.fn;
          return x < f.breakpoints().back() ? f(x) : f.values().back();
        } else if constexpr (std::is_same_v<T, Product>) {
          double r = 1.0;
          for (const auto& w : n.parts) r *= (*w)(x);
          return r;
        } else {
          return 1.0 / (*n.inner)(x);
        }
      },
      node_);
}

bool Weight::is_one() const {
  if (const auto* p = std::get_if<Power>(&node_)) return p->alpha == 0.0;
  if (const auto* pr = std::get_if<Product>(&node_)) {
    for (const auto& w : pr->parts)
      if (!w->is_one()) return false;
    return true;
  }
  if (const auto* r = std::get_if<Reciprocal>(&node_)) return r->inner->is_one();
  return false;
}

std::vector<double> Weight::knots(const Domain& d) const {
  std::vector<double> out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MaxInvOne>) {
          out.push_back(1.0);
        } else if constexpr (std::is_same_v<T, PhiOverT>) {
          for (double t : n.phi.knots())
            if (t > 0.0) out.push_back(t);
        } else if constexpr (std::is_same_v<T, Explicit>) {
          const auto& bp = n.fn.breakpoints();
          out.insert(out.end(), bp.begin() + 1, bp.end());
        } else if constexpr (std::is_same_v<T, Product>) {
          for (const auto& w : n.parts) {
            auto k = w->knots(d);
            out.insert(out.end(), k.begin(), k.end());
          }
        } else if constexpr (std::is_same_v<T, Reciprocal>) {
          out = n.inner->knots(d);
        }
      },
      node_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Weight::exponent_at_zero() const {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Power>) return n.alpha;
        else if constexpr (std::is_same_v<T, Product>) {
          double s = 0.0;
          for (const auto& w : n.parts) s += w->exponent_at_zero();
          return s;
        } else if constexpr (std::is_same_v<T, Reciprocal>) {
          return -n.inner->exponent_at_zero();
        } else {
          return 0.0;
        }
      },
      node_);
}

double Weight::exponent_at_one() const {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, OneMinusXInv>) return -1.0;
        else if constexpr (std::is_same_v<T, MaxInvOne>) return -1.0;
        else if constexpr (std::is_same_v<T, OneMinusX>) return 1.0;
        else if constexpr (std::is_same_v<T, Product>) {
          double s = 0.0;
          for (const auto& w : n.parts) s += w->exponent_at_one();
          return s;
        } else if constexpr (std::is_same_v<T, Reciprocal>) {
          return -n.inner->exponent_at_one();
        } else {
          return 0.0;
        }
      },
      node_);
}

double Weight::exponent_at_infinity() const {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Power>) return n.alpha;
        else if constexpr (std::is_same_v<T, PhiOverT>) {
          return n.phi.final_slope() > 0.0 ? 0.0 : -1.0;
        } else if constexpr (std::is_same_v<T, Product>) {
          double s = 0.0;
          for (const auto& w : n.parts) s += w->exponent_at_infinity();
          return s;
        } else if constexpr (std::is_same_v<T, Reciprocal>) {
          return -n.inner->exponent_at_infinity();
        } else {
          return 0.0;  // OneMinusXInv/OneMinusX are unit-interval forms
        }
      },
      node_);
}

std::string Weight::format() const {
  return std::visit(
      [this](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Power>) {
          return n.alpha == 0.0 ? "one" : "(pow " + format_number(n.alpha) + ")";
        } else if constexpr (std::is_same_v<T, OneMinusXInv>) {
          return "inv1mx";
        } else if constexpr (std::is_same_v<T, OneMinusX>) {
          return "onemx";
        } else if constexpr (std::is_same_v<T, MaxInvOne>) {
          return "maxinv1";
        } else if constexpr (std::is_same_v<T, PhiOverT>) {
          return "(phiovert " + n.phi.format() + ")";
        } else if constexpr (std::is_same_v<T, Explicit>) {
          std::string s = "(expl " + n.fn.domain().describe();
          if (n.fn.domain().kind == DomainKind::HalfLine)
            s += " " + format_number(n.fn.domain().horizon);
          s += " (";
          const auto& bp = n.fn.breakpoints();
          for (std::size_t i = 0; i < bp.size(); ++i)
            s += (i ? " " : "") + format_number(bp[i]);
          s += ") (";
          const auto& vals = n.fn.values();
          for (std::size_t i = 0; i < vals.size(); ++i)
            s += (i ? " " : "") + format_number(vals[i]);
          return s + "))";
        } else if constexpr (std::is_same_v<T, Product>) {
          std::string s = "(prod";
          for (const auto& w : n.parts) s += " " + w->format();
          return s + ")";
        } else {
          return "(recip " + n.inner->format() + ")";
        }
      },
      node_);
}

// ---------------------------------------------------------------- SeqWeight

double SeqWeight::at(std::size_t n) const {
  double w = alpha == 0.0 ? 1.0 : std::pow(static_cast<double>(n), alpha);
  if (!entries.empty())
    w *= n <= entries.size() ? entries[n - 1] : entries.back();
  return w;
}

// ---------------------------------------------------------------- SpaceSpec

SpacePtr SpaceSpec::lp(double p, WeightPtr w, Domain d) {
  require(p >= 1.0, "Lp: need p >= 1");
  if (!w) w = Weight::one();
  return std::make_shared<SpaceSpec>(SpaceSpec{Lp{p, std::move(w), d}});
}
SpacePtr SpaceSpec::lorentz(ConcaveGauge phi) {
  return std::make_shared<SpaceSpec>(SpaceSpec{Lorentz{std::move(phi)}});
}
SpacePtr SpaceSpec::marcinkiewicz(ConcaveGauge phi, bool starred) {
  return std::make_shared<SpaceSpec>(SpaceSpec{Marcinkiewicz{std::move(phi), starred}});
}
SpacePtr SpaceSpec::cesaro(SpacePtr inner) {
  return std::make_shared<SpaceSpec>(SpaceSpec{Cesaro{std::move(inner)}});
}
SpacePtr SpaceSpec::tilde(SpacePtr inner) {
  return std::make_shared<SpaceSpec>(SpaceSpec{Tilde{std::move(inner)}});
}
SpacePtr SpaceSpec::weighted(SpacePtr inner, WeightPtr w) {
  if (!w) w = Weight::one();
  if (const auto* iw = std::get_if<Weighted>(&inner->node)) {
    auto combined = Weight::make(Weight::Product{{iw->w, std::move(w)}});
    return std::make_shared<SpaceSpec>(SpaceSpec{Weighted{iw->inner, std::move(combined)}});
  }
  return std::make_shared<SpaceSpec>(SpaceSpec{Weighted{std::move(inner), std::move(w)}});
}
SpacePtr SpaceSpec::seq_lp(double p, SeqWeight w) {
  require(p >= 1.0, "SeqLp: need p >= 1");
  for (double v : w.entries) require(v > 0.0, "SeqLp: explicit weight entries must be positive");
  return std::make_shared<SpaceSpec>(SpaceSpec{SeqLp{p, std::move(w)}});
}
SpacePtr SpaceSpec::seq_cesaro(SpacePtr inner) {
  return std::make_shared<SpaceSpec>(SpaceSpec{SeqCesaro{std::move(inner)}});
}
SpacePtr SpaceSpec::seq_tilde(SpacePtr inner) {
  return std::make_shared<SpaceSpec>(SpaceSpec{SeqTilde{std::move(inner)}});
}

bool SpaceSpec::is_sequence_space() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SeqLp> || std::is_same_v<T, SeqCesaro> ||
                      std::is_same_v<T, SeqTilde>) {
          return true;
        } else if constexpr (std::is_same_v<T, Cesaro> || std::is_same_v<T, Tilde>) {
          return n.inner->is_sequence_space();
        } else if constexpr (std::is_same_v<T, Weighted>) {
          return n.inner->is_sequence_space();
        } else {
          return false;
        }
      },
      node);
}

Domain SpaceSpec::domain() const {
  return std::visit(
      [](const auto& n) -> Domain {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lp>) return n.domain;
        else if constexpr (std::is_same_v<T, Lorentz> || std::is_same_v<T, Marcinkiewicz>)
          return Domain::half_line(1.0);
        else if constexpr (std::is_same_v<T, Cesaro> || std::is_same_v<T, Tilde>)
          return n.inner->domain();
        else if constexpr (std::is_same_v<T, Weighted>)
          return n.inner->domain();
        else
          throw Unsupported("sequence space has no function domain");
      },
      node);
}

std::string SpaceSpec::format() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lp>) {
          return "Lp " + format_number(n.p) + " " + n.w->format() + " " + n.domain.describe();
        } else if constexpr (std::is_same_v<T, Lorentz>) {
          return "Lorentz " + n.phi.format();
        } else if constexpr (std::is_same_v<T, Marcinkiewicz>) {
          return std::string(n.starred ? "MarStar " : "Mar ") + n.phi.format();
        } else if constexpr (std::is_same_v<T, Cesaro>) {
          return "Ces(" + n.inner->format() + ")";
        } else if constexpr (std::is_same_v<T, Tilde>) {
          return "Tilde(" + n.inner->format() + ")";
        } else if constexpr (std::is_same_v<T, Weighted>) {
          return "Wtd(" + n.inner->format() + " " + n.w->format() + ")";
        } else if constexpr (std::is_same_v<T, SeqLp>) {
          std::string w;
          if (n.w.is_one()) {
            w = "one";
          } else if (n.w.entries.empty()) {
            w = "(npow " + format_number(n.w.alpha) + ")";
          } else {
            w = "(seqw " + format_number(n.w.alpha);
            for (double v : n.w.entries) w += " " + format_number(v);
            w += ")";
          }
          return "SeqLp " + format_number(n.p) + " " + w;
        } else if constexpr (std::is_same_v<T, SeqCesaro>) {
          return "SeqCes(" + n.inner->format() + ")";
        } else {
          return "SeqTilde(" + n.inner->format() + ")";
        }
      },
      node);
}

// ---------------------------------------------------------------- s-expressions

namespace {

struct Sexpr {
  bool is_list = false;
  std::string atom;
  std::vector<Sexpr> items;
};

struct Tokenizer {
  const std::string& text;
  std::size_t pos = 0;
  explicit Tokenizer(const std::string& t) : text(t) {}
  std::optional<std::string> next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) return std::nullopt;
    char c = text[pos];
    if (c == '(' || c == ')') {
      ++pos;
      return std::string(1, c);
    }
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  }
  std::optional<std::string> peek() {
    std::size_t save = pos;
    auto t = next();
    pos = save;
    return t;
  }
  // True when '(' follows immediately, with no whitespace in between.
  bool at_lparen() const { return pos < text.size() && text[pos] == '('; }
};

Sexpr parse_expr(Tokenizer& tk);

Sexpr parse_list_body(Tokenizer& tk) {
  Sexpr node;
  node.is_list = true;
  while (true) {
    auto t = tk.peek();
    if (!t) throw ParseError("s-expression: missing ')'");
    if (*t == ")") {
      tk.next();
      return node;
    }
    node.items.push_back(parse_expr(tk));
  }
}

Sexpr parse_expr(Tokenizer& tk) {
  auto t = tk.next();
  if (!t) throw ParseError("s-expression: unexpected end of input");
  if (*t == "(") return parse_list_body(tk);
  if (*t == ")") throw ParseError("s-expression: unexpected ')'");
  // head-call form: IDENT(...) becomes (IDENT ...). The parenthesis must be
  // adjacent; "IDENT (...)" keeps the two expressions separate so emitted
  // forms like "Lorentz (gauge ...)" and "(prod (pow 1) (pow 2))" parse back.
  if (tk.at_lparen()) {
    // only treat as head call when the atom is not a number
    bool numeric = !t->empty() && (std::isdigit(static_cast<unsigned char>((*t)[0])) ||
                                   (*t)[0] == '-' || (*t)[0] == '+' || (*t)[0] == '.');
    if (!numeric) {
      tk.next();  // consume '('
      Sexpr node = parse_list_body(tk);
      node.items.insert(node.items.begin(), Sexpr{false, *t, {}});
      return node;
    }
  }
  return Sexpr{false, *t, {}};
}

// Parses the whole input as a sequence of expressions; a single expression
// stands alone, several form an implicit list ("Lp 2 (pow 0) unit").
Sexpr parse_top(const std::string& text) {
  Tokenizer tk(text);
  std::vector<Sexpr> items;
  while (tk.peek()) items.push_back(parse_expr(tk));
  if (items.empty()) throw ParseError("empty spec string");
  if (items.size() == 1) return items[0];
  Sexpr node;
  node.is_list = true;
  node.items = std::move(items);
  return node;
}

const std::string& head_of(const Sexpr& node) {
  static const std::string empty;
  if (!node.is_list || node.items.empty() || node.items[0].is_list) return empty;
  return node.items[0].atom;
}

double number_of(const Sexpr& node, const char* what) {
  if (node.is_list) throw ParseError(std::string(what) + ": expected a number");
  return parse_number(node.atom);
}

Domain domain_of(const Sexpr& node) {
  if (node.is_list) throw ParseError("expected a domain (unit | halfline)");
  if (node.atom == "unit") return Domain::unit();
  if (node.atom == "halfline") return Domain::half_line(1.0);
  throw ParseError("unknown domain '" + node.atom + "'");
}

ConcaveGauge gauge_of(const Sexpr& node) {
  if (!node.is_list || head_of(node) != "gauge")
    throw ParseError("expected (gauge t0 v0 t1 v1 ... [slope s])");
  std::vector<double> ts, vs;
  double final_slope = 0.0;
  std::size_t i = 1;
  while (i < node.items.size()) {
    const Sexpr& it = node.items[i];
    if (!it.is_list && it.atom == "slope") {
      if (i + 1 >= node.items.size()) throw ParseError("gauge: slope needs a value");
      final_slope = number_of(node.items[i + 1], "gauge slope");
      i += 2;
      continue;
    }
    if (i + 1 >= node.items.size()) throw ParseError("gauge: knots come in (t v) pairs");
    ts.push_back(number_of(node.items[i], "gauge knot"));
    vs.push_back(number_of(node.items[i + 1], "gauge value"));
    i += 2;
  }
  return ConcaveGauge(std::move(ts), std::move(vs), final_slope);
}

WeightPtr weight_of(const Sexpr& node) {
  if (!node.is_list) {
    if (node.atom == "one") return Weight::one();
    if (node.atom == "inv1mx") return Weight::make(Weight::OneMinusXInv{});
    if (node.atom == "onemx") return Weight::make(Weight::OneMinusX{});
    if (node.atom == "maxinv1") return Weight::make(Weight::MaxInvOne{});
    throw ParseError("unknown weight '" + node.atom + "'");
  }
  const std::string& head = head_of(node);
  if (head == "pow") {
    if (node.items.size() != 2) throw ParseError("(pow alpha) takes one argument");
    return Weight::power(number_of(node.items[1], "pow"));
  }
  if (head == "phiovert") {
    if (node.items.size() != 2) throw ParseError("(phiovert <gauge>) takes one argument");
    return Weight::make(Weight::PhiOverT{gauge_of(node.items[1])});
  }
  if (head == "prod") {
    Weight::Product pr;
    for (std::size_t i = 1; i < node.items.size(); ++i) pr.parts.push_back(weight_of(node.items[i]));
    if (pr.parts.empty()) throw ParseError("(prod ...) needs at least one factor");
    return Weight::make(std::move(pr));
  }
  if (head == "recip") {
    if (node.items.size() != 2) throw ParseError("(recip <w>) takes one argument");
    return Weight::make(Weight::Reciprocal{weight_of(node.items[1])});
  }
  if (head == "expl") {
    // (expl unit (bp...) (v...)) or (expl halfline H (bp...) (v...))
    std::size_t i = 1;
    if (i >= node.items.size()) throw ParseError("(expl ...) needs a domain");
    Domain d = domain_of(node.items[i++]);
    if (d.kind == DomainKind::HalfLine) {
      if (i >= node.items.size()) throw ParseError("(expl halfline ...) needs a horizon");
      d.horizon = number_of(node.items[i++], "expl horizon");
    }
    if (i + 1 >= node.items.size()) throw ParseError("(expl ...) needs breakpoint and value lists");
    const Sexpr& jb = node.items[i];
    const Sexpr& jv = node.items[i + 1];
    if (!jb.is_list || !jv.is_list) throw ParseError("(expl ...) lists must be parenthesized");
    std::vector<double> bp, vals;
    for (const auto& e : jb.items) bp.push_back(number_of(e, "expl breakpoint"));
    for (const auto& e : jv.items) vals.push_back(number_of(e, "expl value"));
    return Weight::make(Weight::Explicit{StepFunction(d, std::move(bp), std::move(vals))});
  }
  throw ParseError("unknown weight form '" + head + "'");
}

SeqWeight seq_weight_of(const Sexpr& node) {
  if (!node.is_list) {
    if (node.atom == "one") return {};
    throw ParseError("unknown sequence weight '" + node.atom + "'");
  }
  const std::string& head = head_of(node);
  if (head == "npow") {
    if (node.items.size() != 2) throw ParseError("(npow alpha) takes one argument");
    return SeqWeight{number_of(node.items[1], "npow"), {}};
  }
  if (head == "seqw") {
    if (node.items.size() < 3) throw ParseError("(seqw alpha v1 ...) needs entries");
    SeqWeight w;
    w.alpha = number_of(node.items[1], "seqw alpha");
    for (std::size_t i = 2; i < node.items.size(); ++i)
      w.entries.push_back(number_of(node.items[i], "seqw entry"));
    return w;
  }
  throw ParseError("unknown sequence weight form '" + head + "'");
}

SpacePtr space_of(const Sexpr& node);

SpacePtr space_of_items(const std::vector<Sexpr>& items, std::size_t lo, std::size_t hi) {
  if (hi <= lo) throw ParseError("empty space expression");
  if (hi - lo == 1) return space_of(items[lo]);
  Sexpr synth;
  synth.is_list = true;
  synth.items.assign(items.begin() + static_cast<long>(lo), items.begin() + static_cast<long>(hi));
  return space_of(synth);
}

SpacePtr space_of(const Sexpr& node) {
  if (!node.is_list) throw ParseError("space spec: expected a constructor, got '" + node.atom + "'");
  const std::string& head = head_of(node);
  const auto& it = node.items;
  if (head == "Lp") {
    if (it.size() != 4) throw ParseError("Lp takes: p, weight, domain");
    return SpaceSpec::lp(number_of(it[1], "Lp p"), weight_of(it[2]), domain_of(it[3]));
  }
  if (head == "Lorentz") {
    if (it.size() != 2) throw ParseError("Lorentz takes a gauge");
    return SpaceSpec::lorentz(gauge_of(it[1]));
  }
  if (head == "Mar" || head == "MarStar") {
    if (it.size() != 2) throw ParseError("Mar/MarStar takes a gauge");
    return SpaceSpec::marcinkiewicz(gauge_of(it[1]), head == "MarStar");
  }
  if (head == "Ces") return SpaceSpec::cesaro(space_of_items(it, 1, it.size()));
  if (head == "Tilde") return SpaceSpec::tilde(space_of_items(it, 1, it.size()));
  if (head == "Wtd") {
    if (it.size() < 3) throw ParseError("Wtd takes: space..., weight");
    return SpaceSpec::weighted(space_of_items(it, 1, it.size() - 1), weight_of(it.back()));
  }
  if (head == "SeqLp") {
    if (it.size() != 3) throw ParseError("SeqLp takes: p, weight");
    return SpaceSpec::seq_lp(number_of(it[1], "SeqLp p"), seq_weight_of(it[2]));
  }
  if (head == "SeqCes") return SpaceSpec::seq_cesaro(space_of_items(it, 1, it.size()));
  if (head == "SeqTilde") return SpaceSpec::seq_tilde(space_of_items(it, 1, it.size()));
  throw ParseError("unknown space constructor '" + head + "'");
}

}  // namespace

SpacePtr parse_space(const std::string& text) { return space_of(parse_top(text)); }
WeightPtr parse_weight(const std::string& text) { return weight_of(parse_top(text)); }

// ---------------------------------------------------------------- nontriviality

namespace {

// Weighted(Lp) collapses to Lp with a product weight; other nodes unchanged.
const SpaceSpec* flatten_weighted(const SpaceSpec& spec, SpacePtr& storage) {
  if (const auto* w = std::get_if<SpaceSpec::Weighted>(&spec.node)) {
    if (const auto* lp = std::get_if<SpaceSpec::Lp>(&w->inner->node)) {
      auto combined = lp->w->is_one() ? w->w : Weight::make(Weight::Product{{lp->w, w->w}});
      storage = SpaceSpec::lp(lp->p, combined, lp->domain);
      return storage.get();
    }
  }
  return &spec;
}

NontrivialityResult decide_halfline_inner(const SpaceSpec& inner) {
  // witness family: (1/x)·χ_[a,∞), a = 1
  if (const auto* lp = std::get_if<SpaceSpec::Lp>(&inner.node)) {
    double e = lp->w->exponent_at_infinity();
    if (lp->p == std::numeric_limits<double>::infinity()) {
      bool ok = e <= 1.0;
      return {ok ? Triviality::NonTrivial : Triviality::Trivial, 1.0,
              "sup_{x>=a} w(x)/x finite iff the weight grows at most linearly"};
    }
    bool ok = (e - 1.0) * lp->p < -1.0;
    return {ok ? Triviality::NonTrivial : Triviality::Trivial, 1.0,
            "tail integral of (w(x)/x)^p converges iff (e_inf - 1)p < -1"};
  }
  if (const auto* lo = std::get_if<SpaceSpec::Lorentz>(&inner.node)) {
    bool ok = lo->phi.final_slope() == 0.0;
    return {ok ? Triviality::NonTrivial : Triviality::Trivial, 1.0,
            "witness rearrangement 1/(t+a) integrates against dφ iff φ is eventually flat"};
  }
  if (const auto* ma = std::get_if<SpaceSpec::Marcinkiewicz>(&inner.node)) {
    if (ma->starred) return {Triviality::NonTrivial, 1.0, "t·f*(t)/φ(t) stays bounded"};
    bool ok = ma->phi.final_slope() > 0.0;
    return {ok ? Triviality::NonTrivial : Triviality::Trivial, 1.0,
            "log-growing partial integrals need a linearly growing gauge"};
  }
  return {Triviality::Undecidable, std::nullopt, "no integrability analysis for this inner space"};
}

NontrivialityResult decide_unit_inner(const SpaceSpec& inner) {
  // witness family: χ_[a,1], a = 1/2
  if (const auto* lp = std::get_if<SpaceSpec::Lp>(&inner.node)) {
    double e = lp->w->exponent_at_one();
    if (lp->p == std::numeric_limits<double>::infinity()) {
      bool ok = e >= 0.0;
      return {ok ? Triviality::NonTrivial : Triviality::Trivial, 0.5,
              "sup of w near 1 finite iff the weight has no pole there"};
    }
    bool ok = e * lp->p > -1.0;
    return {ok ? Triviality::NonTrivial : Triviality::Trivial, 0.5,
            "integral of w^p near 1 converges iff e_1·p > -1"};
  }
  return {Triviality::Undecidable, std::nullopt, "no integrability analysis for this inner space"};
}

NontrivialityResult decide_sequence_inner(const SpaceSpec& inner) {
  // witness: the harmonic sequence (1/n)
  if (const auto* lp = std::get_if<SpaceSpec::SeqLp>(&inner.node)) {
    double alpha = lp->w.alpha;  // explicit entries are bounded above/below, irrelevant here
    if (lp->p == std::numeric_limits<double>::infinity()) {
      bool ok = alpha <= 1.0;
      return {ok ? Triviality::NonTrivial : Triviality::Trivial, std::nullopt,
              "sup n^(alpha-1) finite iff alpha <= 1"};
    }
    bool ok = (alpha - 1.0) * lp->p < -1.0;
    return {ok ? Triviality::NonTrivial : Triviality::Trivial, std::nullopt,
            "sum of n^((alpha-1)p) converges iff (alpha-1)p < -1"};
  }
  return {Triviality::Undecidable, std::nullopt, "no integrability analysis for this inner space"};
}

}  // namespace

NontrivialityResult nontriviality(const SpaceSpec& spec) {
  if (const auto* ces = std::get_if<SpaceSpec::Cesaro>(&spec.node)) {
    SpacePtr storage;
    const SpaceSpec* inner = flatten_weighted(*ces->inner, storage);
    Domain d = inner->domain();
    return d.kind == DomainKind::HalfLine ? decide_halfline_inner(*inner)
                                          : decide_unit_inner(*inner);
  }
  if (const auto* ces = std::get_if<SpaceSpec::SeqCesaro>(&spec.node)) {
    return decide_sequence_inner(*ces->inner);
  }
  throw Unsupported("nontriviality expects a Ces(...) or SeqCes(...) spec");
}

}  // namespace ceslab
