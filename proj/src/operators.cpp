#include "ceslab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ceslab::ops {

namespace {
constexpr double kE = 2.718281828459045235360287471352662498;
}

// ---------------------------------------------------------------- CesaroImage

CesaroImage CesaroImage::of(const StepFunction& f) {
  CesaroImage img;
  img.domain_ = f.domain();
  img.breakpoints_ = f.breakpoints();
  const auto& v = f.values();
  img.a_.resize(v.size());
  img.b_.resize(v.size());
  double F = 0.0;  // ∫_0^{t_{i-1}} f
  for (std::size_t i = 0; i < v.size(); ++i) {
    double l = img.breakpoints_[i];
    img.b_[i] = v[i];
    img.a_[i] = F - v[i] * l;  // a_0 = 0 exactly since F = l = 0
    F += v[i] * (img.breakpoints_[i + 1] - l);
  }
  img.tail_mass_ = F;
  img.build_cumulative();
  return img;
}

CesaroImage CesaroImage::from_profile(Domain d, std::vector<double> grid,
                                      const std::vector<double>& F) {
  if (grid.size() != F.size() || grid.size() < 2 || grid.front() != 0.0 || F.front() != 0.0)
    throw ParseError("cesaro profile: grid/F mismatch or missing origin");
  CesaroImage img;
  img.domain_ = d;
  img.breakpoints_ = std::move(grid);
  std::size_t m = img.breakpoints_.size() - 1;
  img.a_.resize(m);
  img.b_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double l = img.breakpoints_[i], r = img.breakpoints_[i + 1];
    double slope = (F[i + 1] - F[i]) / (r - l);
    img.b_[i] = slope;
    img.a_[i] = F[i] - slope * l;
  }
  img.tail_mass_ = F.back();
  img.build_cumulative();
  return img;
}

void CesaroImage::build_cumulative() {
  cum_.assign(breakpoints_.size(), 0.0);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    double l = breakpoints_[i], r = breakpoints_[i + 1];
    double piece = b_[i] * (r - l);
    if (a_[i] != 0.0) piece += a_[i] * std::log(r / l);  // a_0 = 0 guards l = 0
    cum_[i + 1] = cum_[i] + piece;
  }
}

bool CesaroImage::is_zero() const { return tail_mass_ == 0.0 && cum_.back() == 0.0; }

double CesaroImage::operator()(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= breakpoints_.back()) {
    if (domain_.kind == DomainKind::UnitInterval && x > 1.0) return 0.0;
    return x > 0.0 ? tail_mass_ / x : b_.front();
  }
  if (x == 0.0) return b_.front();  // continuous limit (a_0 = 0)
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return b_[i] + a_[i] / x;
}

double CesaroImage::max_value() const {
  // each cell is monotone in x, so cell endpoints are enough
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    double l = breakpoints_[i], r = breakpoints_[i + 1];
    double left = l == 0.0 ? b_[i] : b_[i] + a_[i] / l;
    double right = b_[i] + a_[i] / r;
    m = std::max({m, left, right});
  }
  return m;
}

double CesaroImage::integral_to(double x) const {
  if (x <= 0.0) return 0.0;
  double H = breakpoints_.back();
  if (x >= H) {
    if (domain_.kind == DomainKind::UnitInterval) return cum_.back();
    return cum_.back() + (x > H ? tail_mass_ * std::log(x / H) : 0.0);
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  double l = breakpoints_[i];
  double piece = b_[i] * (x - l);
  if (a_[i] != 0.0) piece += a_[i] * std::log(x / l);
  return cum_[i] + piece;
}

CesaroImage cesaro(const StepFunction& f) { return CesaroImage::of(f); }

double CesaroOfCesaro::operator()(double x) const {
  if (x <= 0.0) return image_(0.0);  // CCf(0+) = Cf(0+) = f(0+)
  return image_.integral_to(x) / x;
}

// ---------------------------------------------------------------- Copson

CopsonImage::CopsonImage(const StepFunction& f) : f_(f) {
  if (f.domain().kind != DomainKind::UnitInterval)
    throw DomainMismatch("copson: defined on the unit interval");
}

double CopsonImage::operator()(double x) const {
  if (x <= 0.0) throw std::domain_error("copson image: x must be > 0");
  if (x >= 1.0) return 0.0;
  const auto& bp = f_.breakpoints();
  const auto& v = f_.values();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double l = std::max(x, bp[i]);
    double r = bp[i + 1];
    if (l >= r || v[i] == 0.0) continue;
    total += v[i] * std::log(r / l);
  }
  return total;
}

CopsonImage copson(const StepFunction& f) { return CopsonImage(f); }

// ---------------------------------------------------------------- majorant

StepFunction majorant(const StepFunction& f) {
  std::vector<double> vals(f.values().size());
  double running = 0.0;
  for (std::size_t i = vals.size(); i-- > 0;) {
    running = std::max(running, std::fabs(f.values()[i]));
    vals[i] = running;
  }
  return StepFunction(f.domain(), f.breakpoints(), std::move(vals));
}

// ---------------------------------------------------------------- dilations

StepFunction dilation(const StepFunction& f, double tau) {
  if (!(tau > 0.0)) throw ParseError("dilation: tau must be > 0");
  const auto& bp = f.breakpoints();
  const auto& v = f.values();
  if (f.domain().kind == DomainKind::HalfLine) {
    std::vector<double> nbp(bp.size());
    for (std::size_t i = 0; i < bp.size(); ++i) nbp[i] = bp[i] * tau;
    const double horizon = nbp.back();  // read before the move is materialized
    return StepFunction(Domain::half_line(horizon), std::move(nbp), v);
  }
  // unit interval: supported on [0, min(1, tau))
  std::vector<double> nbp{0.0};
  std::vector<double> nv;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r = bp[i + 1] * tau;
    if (r >= 1.0) {
      nbp.push_back(1.0);
      nv.push_back(v[i]);
      return StepFunction(Domain::unit(), std::move(nbp), std::move(nv));
    }
    nbp.push_back(r);
    nv.push_back(v[i]);
  }
  if (nbp.back() < 1.0) {  // tau < 1: pad with zero up to 1
    nbp.push_back(1.0);
    nv.push_back(0.0);
  }
  return StepFunction(Domain::unit(), std::move(nbp), std::move(nv));
}

Sequence dilation_seq(const Sequence& x, int m) {
  if (m < 1) throw ParseError("dilation_seq: m must be >= 1");
  std::vector<double> out;
  out.reserve(x.support() * static_cast<std::size_t>(m));
  for (double v : x.entries())
    for (int k = 0; k < m; ++k) out.push_back(v);
  return Sequence(std::move(out));
}

std::vector<double> cesaro_seq(const Sequence& x, std::size_t n_terms) {
  std::vector<double> out(n_terms);
  double s = 0.0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    s += x.at1(n);
    out[n - 1] = s / static_cast<double>(n);
  }
  return out;
}

// ---------------------------------------------------------------- substitution

double subst_d(double t) { return t + kE - kE * t; }
double subst_sigma(double t) { return t / subst_d(t); }
double subst_sigma_inv(double t) { return kE * t / (1.0 - t + kE * t); }

StepFunction substitution_T(const StepFunction& h) {
  if (h.domain().kind != DomainKind::UnitInterval)
    throw DomainMismatch("substitution_T: defined on the unit interval");
  const auto& bp = h.breakpoints();
  std::vector<double> nbp(bp.size());
  for (std::size_t i = 0; i < bp.size(); ++i) nbp[i] = subst_sigma_inv(bp[i]);
  nbp.front() = 0.0;
  nbp.back() = 1.0;
  return StepFunction(Domain::unit(), std::move(nbp), h.values());
}

// ---------------------------------------------------------------- rearrangement

StepFunction decreasing_rearrangement(const StepFunction& f) {
  const auto& bp = f.breakpoints();
  const auto& v = f.values();
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return std::fabs(v[i]) > std::fabs(v[j]);
  });
  std::vector<double> nbp{0.0};
  std::vector<double> nv;
  double t = 0.0;
  for (std::size_t k : idx) {
    double len = bp[k + 1] - bp[k];
    double val = std::fabs(v[k]);
    if (!nv.empty() && nv.back() == val) {
      t += len;
      nbp.back() = t;
    } else {
      t += len;
      nbp.push_back(t);
      nv.push_back(val);
    }
  }
  // lengths must add back up to the horizon exactly
  nbp.back() = f.domain().horizon;
  return StepFunction(f.domain(), std::move(nbp), std::move(nv));
}

}  // namespace ceslab::ops
