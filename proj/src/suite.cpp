#include "ceslab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ceslab/core.hpp"
#include "ceslab/duality.hpp"
#include "ceslab/inequalities.hpp"
#include "ceslab/interpolation.hpp"
#include "ceslab/norms.hpp"
#include "ceslab/operators.hpp"
#include "ceslab/parallel.hpp"
#include "ceslab/quadrature.hpp"
#include "ceslab/sampling.hpp"

namespace ceslab::suite {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t count(const SuiteConfig& cfg, std::size_t def) {
  return cfg.samples > 0 ? cfg.samples : def;
}
double tol(const SuiteConfig& cfg, double def) {
  return cfg.tolerance >= 0.0 ? cfg.tolerance : def;
}
std::uint64_t base_seed(const SuiteConfig& cfg, int id) {
  return cfg.seed * 1000003ULL + static_cast<std::uint64_t>(id);
}

bool band_pass(const std::vector<double>& ratios, double lo, double hi, double t) {
  for (double r : ratios) {
    if (!std::isfinite(r)) return false;
    if (r < lo * (1.0 - t) || r > hi * (1.0 + t)) return false;
  }
  return true;
}

std::string payload(const SuiteConfig& cfg, nlohmann::json j,
                    const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "series,sample,value\n";
    for (const auto& [name, vals] : series)
      for (std::size_t i = 0; i < vals.size(); ++i)
        os << name << "," << i << "," << format_number(vals[i]) << "\n";
    return os.str();
  }
  for (const auto& [name, vals] : series) j[name] = vals;
  return j.dump(2);
}

// Zero a step function outside [lo_cut, hi_cut]; keeps it nonzero somewhere.
StepFunction truncate_support(const StepFunction& f, double lo_cut, double hi_cut) {
  const double H = f.breakpoints().back();
  const std::vector<double> cut{0.0, lo_cut, hi_cut, H};
  std::vector<double> sorted_cut;
  for (double c : cut)
    if (c > 0.0 && c < H) sorted_cut.push_back(c);
  sorted_cut.insert(sorted_cut.begin(), 0.0);
  sorted_cut.push_back(H);
  std::sort(sorted_cut.begin(), sorted_cut.end());
  std::vector<double> grid = merge_breakpoints({&f.breakpoints(), &sorted_cut}, H);
  std::vector<double> vals(grid.size() - 1);
  bool nonzero = false;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double mid = 0.5 * (grid[i] + grid[i + 1]);
    vals[i] = (mid >= lo_cut && mid <= hi_cut) ? f(mid) : 0.0;
    nonzero = nonzero || vals[i] != 0.0;
  }
  if (!nonzero) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double mid = 0.5 * (grid[i] + grid[i + 1]);
      if (mid >= lo_cut && mid <= hi_cut) {
        vals[i] = 1.0;
        break;
      }
    }
  }
  return StepFunction(f.domain(), grid, std::move(vals));
}

// ---------------------------------------------------------------- criterion 1
CriterionResult c1_sinnamon(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 200);
  const double rel_tol = tol(cfg, 1e-8);
  const std::uint64_t seed = base_seed(cfg, 1);

  std::vector<double> rel_errs(2 * n, 0.0), slacks(2 * n, 0.0);
  std::vector<double> l1(2 * n, 0.0);
  par::parallel_for(2 * n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    const bool unit = k < n;
    const double span = unit ? 1.0 : rng.log_uniform(0.5, 50.0);
    const Domain d = unit ? Domain::unit() : Domain::half_line(span);
    StepFunction f = sampling::random_step(rng, d, 40, span, sampling::family_for(k));
    StepFunction g = sampling::random_step(rng, d, 40, span, sampling::family_for(k + 1));
    const dual::SinnamonResult s = dual::sinnamon_sup(f, g);
    const double scale = std::max(std::fabs(s.closed_form), 1e-300);
    rel_errs[k] = std::fabs(s.lp_value - s.closed_form) / scale;
    slacks[k] = s.witness.constraint_slack;
    l1[k] = f.integral();
  });

  double max_rel = 0.0, worst_slack = 0.0;
  for (std::size_t k = 0; k < rel_errs.size(); ++k) {
    max_rel = std::max(max_rel, rel_errs[k]);
    worst_slack = std::min(worst_slack, slacks[k] + 1e-9 * l1[k]);
  }
  const bool pass = max_rel <= rel_tol && worst_slack >= 0.0;

  CriterionResult r{1, "sinnamon-identity", pass,
                    "max relative gap " + format_number(max_rel) + " over " +
                        std::to_string(2 * n) + " pairs (tol " + format_number(rel_tol) + ")",
                    ""};
  nlohmann::json j{{"criterion", 1}, {"pass", pass}, {"seed", seed},
                   {"tolerance", rel_tol}, {"max_relative_gap", max_rel}};
  r.payload = payload(cfg, std::move(j), {{"relative_gap", rel_errs}, {"slack", slacks}});
  return r;
}

// ---------------------------------------------------------------- criterion 2
CriterionResult c2_hardy(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 100);
  const std::uint64_t seed = base_seed(cfg, 2);

  std::vector<double> ratios(n, 0.0);
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    const bool unit = k % 2 == 0;
    const double span = unit ? 1.0 : rng.log_uniform(0.5, 50.0);
    const Domain d = unit ? Domain::unit() : Domain::half_line(span);
    StepFunction f = sampling::random_step(rng, d, 24, span, sampling::family_for(k));
    const SpaceSpec l2 = *SpaceSpec::lp(2.0, Weight::one(), d);
    const double den = norm(f, l2).value;
    ratios[k] = den > 0.0 ? norm(ops::cesaro(f.abs()), l2).value / den : 0.0;
  });

  double max_ratio = 0.0;
  for (double r : ratios) max_ratio = std::max(max_ratio, r);
  const double extremal = ineq::hardy_extremal_ratio(2.0, 0.01);
  const bool pass = max_ratio <= 2.0 * (1.0 + tol(cfg, 1e-9)) && extremal >= 1.9 &&
                    extremal <= 2.0;

  CriterionResult r{2, "hardy-classical-constant", pass,
                    "max sampled ratio " + format_number(max_ratio) +
                        " <= 2; extremal family ratio " + format_number(extremal) + " >= 1.9",
                    ""};
  nlohmann::json j{{"criterion", 2}, {"pass", pass},   {"seed", seed},
                   {"constant", 2.0}, {"max_ratio", max_ratio}, {"extremal_ratio", extremal}};
  r.payload = payload(cfg, std::move(j), {{"ratio", ratios}});
  return r;
}

// ---------------------------------------------------------------- criterion 3
CriterionResult c3_unit_hardy(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 100);
  const std::uint64_t seed = base_seed(cfg, 3);
  const double e_tol = tol(cfg, 1e-9);

  struct Combo { double p, alpha; };
  const std::vector<Combo> combos = {{1.0, -0.5}, {2.0, -0.5}, {2.0, 0.0}, {2.0, 0.25},
                                     {3.0, -0.5}, {3.0, 0.0}, {3.0, 0.25}};
  // rel_margins[idx] = (rhs - lhs)/rhs; negative beyond the tolerance is a failure.
  // observed[idx] = best constant the sample itself certifies, for sharpness probing.
  std::vector<double> rel_margins(combos.size() * n, 0.0);
  std::vector<double> observed(combos.size() * n, 0.0);
  par::parallel_for(combos.size() * n, [&](std::size_t idx) {
    const std::size_t ci = idx / n, k = idx % n;
    const Combo cb = combos[ci];
    sampling::Rng rng(sampling::mix_seed(seed, idx));
    StepFunction f = sampling::random_step(rng, Domain::unit(), 16, 1.0,
                                           sampling::family_for(k));
    if (cb.alpha < 0.0) f = truncate_support(f, rng.uniform(0.02, 0.3), 1.0);
    const auto c = ineq::check_hardy_unit_weighted(f, cb.p, cb.alpha);
    rel_margins[idx] = (c.rhs - c.lhs) / std::max(c.rhs, 1e-300);
    observed[idx] = c.constant_used * std::pow(c.lhs / std::max(c.rhs, 1e-300), 1.0 / cb.p);
  });
  bool all_hold = true;
  for (double m : rel_margins)
    if (!(m >= -e_tol)) all_hold = false;

  // Fixture f ≡ 1, p = 2, α = 0: LHS = 1, RHS = 4/3.
  StepFunction one(Domain::unit(), {0.0, 1.0}, {1.0});
  const auto fx = ineq::check_hardy_unit_weighted(one, 2.0, 0.0);
  const bool fixture_ok = std::fabs(fx.lhs - 1.0) <= 1e-9 &&
                          std::fabs(fx.rhs - 4.0 / 3.0) <= 1e-9 && fx.pass;

  const bool pass = all_hold && fixture_ok;
  CriterionResult r{3, "unit-weighted-hardy", pass,
                    std::to_string(combos.size()) + " (p,alpha) combos x " +
                        std::to_string(n) + " samples; fixture lhs " + format_number(fx.lhs) +
                        " <= " + format_number(fx.rhs),
                    ""};
  nlohmann::json j{{"criterion", 3}, {"pass", pass}, {"seed", seed},
                   {"fixture_lhs", fx.lhs}, {"fixture_rhs", fx.rhs}};
  nlohmann::json cj = nlohmann::json::array();
  for (std::size_t ci = 0; ci < combos.size(); ++ci) {
    const double q = combos[ci].p - combos[ci].alpha * combos[ci].p - 1.0;
    double max_obs = 0.0;
    for (std::size_t k = 0; k < n; ++k) max_obs = std::max(max_obs, observed[ci * n + k]);
    cj.push_back({{"p", combos[ci].p},
                  {"alpha", combos[ci].alpha},
                  {"printed_constant", combos[ci].p / q * std::pow(std::max(1.0, q),
                                                                   1.0 / combos[ci].p)},
                  {"check_constant", combos[ci].p / q * std::max(1.0, q)},
                  {"max_observed_ratio", max_obs}});
  }
  j["combos"] = cj;
  r.payload = payload(cfg, std::move(j),
                      {{"relative_margin", rel_margins}, {"observed_ratio", observed}});
  return r;
}

// ------------------------------------------------------------- criteria 4 & 5
CriterionResult c45_seq_duality(const SuiteConfig& cfg, int id) {
  const std::size_t n = count(cfg, 100);
  const double t = tol(cfg, 1e-6);
  const SpaceSpec X = id == 4 ? *SpaceSpec::seq_lp(2.0)
                              : *SpaceSpec::seq_lp(2.0, SeqWeight{-0.25, {}});
  dual::DualityReport rep = dual::duality_report(X, 6, n, base_seed(cfg, id));
  bool pass = rep.hypotheses_verified && band_pass(rep.ratios, rep.interval_lo,
                                                   rep.interval_hi, t);

  // Brute-force cross-check on short supports.
  const std::size_t nb = std::min<std::size_t>(20, n);
  std::vector<double> brute_rel(nb, 0.0);
  par::parallel_for(nb, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(base_seed(cfg, id) + 101, k));
    Sequence g = sampling::random_seq(rng, 6, sampling::family_for(k));
    const double ex = dual::cesaro_dual_norm(g, X).value;
    const double br = dual::cesaro_dual_brute(g, X).value;
    brute_rel[k] = std::fabs(ex - br) / std::max(ex, 1e-300);
  });
  double max_brute = 0.0;
  for (double b : brute_rel) max_brute = std::max(max_brute, b);
  pass = pass && max_brute <= t;

  double rlo = kInf, rhi = 0.0;
  for (double x : rep.ratios) {
    rlo = std::min(rlo, x);
    rhi = std::max(rhi, x);
  }
  CriterionResult r{id, id == 4 ? "seq-duality-l2" : "seq-duality-weighted", pass,
                    "ratios in [" + format_number(rlo) + ", " + format_number(rhi) +
                        "] vs bound [" + format_number(rep.interval_lo) + ", " +
                        format_number(rep.interval_hi) + "]; brute gap " +
                        format_number(max_brute),
                    ""};
  nlohmann::json j{{"criterion", id}, {"pass", pass}, {"seed", rep.seed},
                   {"interval", {{"lo", rep.interval_lo}, {"hi", rep.interval_hi}}},
                   {"max_brute_gap", max_brute}};
  r.payload = payload(cfg, std::move(j), {{"ratio", rep.ratios}, {"brute_gap", brute_rel}});
  return r;
}

// ---------------------------------------------------------------- criterion 6
CriterionResult c6_isometry(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 50);
  const double t = tol(cfg, 1e-6);
  const std::uint64_t seed = base_seed(cfg, 6);

  const StepFunction w = StepFunction::indicator(Domain::unit(), 0.0, 1.0, 1.0);
  const SpaceSpec l1 = *SpaceSpec::lp(1.0, Weight::one(), Domain::unit());
  std::vector<double> rel(n, 0.0);
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    StepFunction g = sampling::random_step(rng, Domain::unit(), 24, 1.0,
                                           sampling::family_for(k));
    const double lp = dual::sinnamon_sup(w, g).lp_value;
    const double den = norm(ops::majorant(g), l1).value;
    rel[k] = std::fabs(lp - den) / std::max(den, 1e-300);
  });
  double max_rel = 0.0;
  for (double x : rel) max_rel = std::max(max_rel, x);
  const bool pass = max_rel <= t;

  CriterionResult r{6, "linf-dual-isometry", pass,
                    "max relative gap " + format_number(max_rel) + " over " +
                        std::to_string(n) + " samples (tol " + format_number(t) + ")",
                    ""};
  nlohmann::json j{{"criterion", 6}, {"pass", pass}, {"seed", seed}, {"tolerance", t},
                   {"max_relative_gap", max_rel}};
  r.payload = payload(cfg, std::move(j), {{"relative_gap", rel}});
  return r;
}

// ---------------------------------------------------------------- criterion 7
CriterionResult c7_down_chain(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 50);
  const double t = tol(cfg, 1e-6);
  const std::uint64_t seed = base_seed(cfg, 7);

  const double B = 2.0;
  double A = kInf;
  for (int i = 0; i < 257; ++i) {
    const double a = 1.5 * std::pow(1000.0 / 1.5, i / 256.0);
    A = std::min(A, std::sqrt(a) / std::log(a));
  }

  std::vector<double> ratios(n, 0.0);
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    const double span = rng.log_uniform(0.5, 50.0);
    StepFunction f = sampling::random_step(rng, Domain::half_line(span), 24, span,
                                           sampling::family_for(k));
    const SpaceSpec l2 = *SpaceSpec::lp(2.0, Weight::one(), f.domain());
    const double down = dual::down_norm(f, l2).norm.value;
    const double ces = norm(f, *SpaceSpec::cesaro(SpaceSpec::lp(2.0, Weight::one(),
                                                                f.domain()))).value;
    ratios[k] = ces > 0.0 ? down / ces : 0.0;
  });
  const bool pass = band_pass(ratios, 1.0 / B, A, t);

  double rlo = kInf, rhi = 0.0;
  for (double x : ratios) {
    rlo = std::min(rlo, x);
    rhi = std::max(rhi, x);
  }
  CriterionResult r{7, "down-norm-chain", pass,
                    "ratios in [" + format_number(rlo) + ", " + format_number(rhi) +
                        "] vs [1/2, " + format_number(A) + "]",
                    ""};
  nlohmann::json j{{"criterion", 7}, {"pass", pass}, {"seed", seed},
                   {"interval", {{"lo", 1.0 / B}, {"hi", A}}}};
  r.payload = payload(cfg, std::move(j), {{"ratio", ratios}});
  return r;
}

// ---------------------------------------------------------------- criterion 8
CriterionResult c8_k_identity(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 100);
  const double t = tol(cfg, 1e-8);
  const std::uint64_t seed = base_seed(cfg, 8);

  std::vector<double> gaps(n, 0.0);
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    StepFunction f = sampling::random_step(rng, Domain::unit(), 16, 1.0,
                                           sampling::family_for(k));
    WeightPtr w;
    if (k % 2 == 0) {
      w = Weight::power(rng.uniform(-0.5, 1.5));
    } else {
      StepFunction ws = sampling::random_step(rng, Domain::unit(), 6, 1.0);
      std::vector<double> wv = ws.values();
      for (double& v : wv) v = 0.1 + std::fabs(v);
      w = Weight::make(Weight::Explicit{StepFunction(ws.domain(), ws.breakpoints(), wv)});
    }
    const double tt = rng.log_uniform(0.01, 10.0);
    const auto c = interp::check_k_identity(f, tt, w);
    gaps[k] = std::fabs(c.lhs - c.rhs) / std::max({std::fabs(c.lhs), std::fabs(c.rhs), 1e-300});
  });
  double max_gap = 0.0;
  for (double g : gaps) max_gap = std::max(max_gap, g);

  const auto tb = interp::check_weighted_interp_bound(
      *SpaceSpec::lp(2.0, Weight::one(), Domain::unit()),
      Weight::make(Weight::OneMinusXInv{}), 50, seed + 11);
  const bool pass = max_gap <= t && tb.pass;

  CriterionResult r{8, "k-identity-interp-bound", pass,
                    "max identity gap " + format_number(max_gap) + "; observed ||T|| " +
                        format_number(tb.lhs) + " <= e",
                    ""};
  nlohmann::json j{{"criterion", 8}, {"pass", pass}, {"seed", seed},
                   {"max_identity_gap", max_gap}, {"observed_T_norm", tb.lhs}};
  r.payload = payload(cfg, std::move(j), {{"identity_gap", gaps}});
  return r;
}

// ---------------------------------------------------------------- criterion 9
CriterionResult c9_pointwise(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 1000);
  const std::uint64_t seed = base_seed(cfg, 9);
  const double t9 = tol(cfg, 1e-9);

  std::vector<int> viol(4, 0);
  std::vector<double> worst(4, kInf);

  // Lemma 1: Cf(x/a) <= (a/ln a)·CCf(x) at a random point.
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    const double span = rng.log_uniform(0.5, 20.0);
    StepFunction f = sampling::random_step(rng, Domain::half_line(span), 12, span,
                                           sampling::family_for(k));
    const double a = rng.log_uniform(1.1, 20.0);
    const double x = rng.log_uniform(0.01 * span, 30.0 * span);
    const ops::CesaroImage cf = ops::CesaroImage::of(f);
    const ops::CesaroOfCesaro ccf(f);
    const double L = cf(x / a), R = (a / std::log(a)) * ccf(x);
    if (!(L <= R * (1.0 + t9))) viol[0]++;
  });
  // Lemma 3 on random (f, t).
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed + 1, k));
    StepFunction f = sampling::random_step(rng, Domain::unit(), 12, 1.0,
                                           sampling::family_for(k));
    const double tt = rng.uniform(0.01, 0.99);
    const auto c = ineq::check_d_lemma(f, tt);
    if (!(c.lhs <= c.rhs * (1.0 + t9))) viol[1]++;
  });
  // Sequence chain on random (x, n).
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed + 2, k));
    Sequence x = sampling::random_seq(rng, 100, sampling::family_for(k));
    const std::size_t nn = static_cast<std::size_t>(rng.uniform_int(1, 100));
    const auto c = ineq::check_curbera_ricker_seq(x, nn);
    if (!c.pass) viol[2]++;
  });
  // Substitution endpoints on random h vanishing near 1.
  par::parallel_for(n, [&](std::size_t k) {
    sampling::Rng rng(sampling::mix_seed(seed + 3, k));
    StepFunction h0 = sampling::random_step(rng, Domain::unit(), 12, 1.0,
                                            sampling::family_for(k));
    StepFunction h = truncate_support(h0, 0.0, rng.uniform(0.5, 0.95));
    const auto [cinf, c1] = ineq::check_T_endpoint_bounds(h);
    if (!(cinf.lhs <= cinf.rhs * (1.0 + t9)) || !(c1.lhs <= c1.rhs * (1.0 + t9))) viol[3]++;
  });

  const int total = viol[0] + viol[1] + viol[2] + viol[3];
  const bool pass = total == 0;
  CriterionResult r{9, "pointwise-lemmas", pass,
                    std::to_string(4 * n) + " randomized checks, " + std::to_string(total) +
                        " violations",
                    ""};
  nlohmann::json j{{"criterion", 9}, {"pass", pass}, {"seed", seed},
                   {"checks_per_lemma", n},
                   {"violations", {{"iterated_average", viol[0]}, {"d_lemma", viol[1]},
                                   {"sequence_chain", viol[2]}, {"substitution", viol[3]}}}};
  (void)worst;
  r.payload = payload(cfg, std::move(j), {});
  return r;
}

// --------------------------------------------------------------- criterion 10
CriterionResult c10_idempotency(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 100);
  const std::uint64_t seed = base_seed(cfg, 10);
  const std::vector<double> ps = {1.5, 2.0, 4.0};

  bool pass = true;
  std::string detail;
  nlohmann::json j{{"criterion", 10}, {"seed", seed}};
  std::vector<std::pair<std::string, std::vector<double>>> series;
  for (double p : ps) {
    const auto rep = ineq::check_idempotency(p, n, seed + static_cast<std::uint64_t>(p * 4));
    pass = pass && rep.pass && rep.minimizer_ok;
    if (!detail.empty()) detail += "; ";
    detail += "p=" + format_number(p) + " grid_min " + format_number(rep.grid_min) +
              " (expect " + format_number(rep.expected_min) + ")";
    j["p" + format_number(p)] = {{"grid_min", rep.grid_min},
                                 {"expected_min", rep.expected_min},
                                 {"interval", {{"lo", rep.lo}, {"hi", rep.hi}}},
                                 {"pass", rep.pass}};
    series.emplace_back("ratio_p" + format_number(p), rep.ratios);
  }
  j["pass"] = pass;
  CriterionResult r{10, "cesaro-idempotency", pass, detail, ""};
  r.payload = payload(cfg, std::move(j), series);
  return r;
}

// --------------------------------------------------------------- criterion 11
CriterionResult c11_support_collapse(const SuiteConfig& cfg) {
  const Domain d = Domain::half_line(3.0);
  const SpaceSpec X =
      *SpaceSpec::cesaro(SpaceSpec::lp(2.0, Weight::make(Weight::MaxInvOne{}), d));
  const NormValue inner_norm =
      norm(StepFunction::indicator(d, 0.0, 0.5, 1.0), X);
  const NormValue outer_norm = norm(StepFunction::indicator(d, 2.0, 3.0, 1.0), X);
  const bool pass = std::isinf(inner_norm.value) && inner_norm.value > 0.0 &&
                    std::isfinite(outer_norm.value) && outer_norm.value > 0.0;
  CriterionResult r{11, "support-collapse", pass,
                    "norm(chi[0,1/2]) = " + format_number(inner_norm.value) +
                        ", norm(chi[2,3]) = " + format_number(outer_norm.value),
                    ""};
  nlohmann::json j{{"criterion", 11}, {"pass", pass},
                   {"inner_norm", std::isinf(inner_norm.value) ? "inf"
                                                               : format_number(inner_norm.value)},
                   {"outer_norm", outer_norm.value}};
  r.payload = payload(cfg, std::move(j), {});
  return r;
}

// --------------------------------------------------------------- criterion 12
CriterionResult c12_lorentz(const SuiteConfig& cfg) {
  const std::size_t n = count(cfg, 50);
  // Concave piecewise-linear gauge ~ sqrt(t): knots 4^j, values 2^j, bounded.
  std::vector<double> kn{0.0}, va{0.0};
  for (int jj = -10; jj <= 10; ++jj) {
    kn.push_back(std::pow(4.0, jj));
    va.push_back(std::pow(2.0, jj));
  }
  const ConcaveGauge phi(kn, va, 0.0);
  dual::DualityReport rep =
      dual::duality_report(*SpaceSpec::lorentz(phi), 8, n, base_seed(cfg, 12));
  const double t = tol(cfg, dual::DualityReport::kTolerance);
  const bool pass = rep.hypotheses_verified &&
                    band_pass(rep.ratios, rep.interval_lo, rep.interval_hi, t);

  double rlo = kInf, rhi = 0.0;
  for (double x : rep.ratios) {
    rlo = std::min(rlo, x);
    rhi = std::max(rhi, x);
  }
  std::string consts;
  for (const auto& c : rep.constants) {
    if (!consts.empty()) consts += ", ";
    consts += c.name + "=" + format_number(c.value);
  }
  CriterionResult r{12, "lorentz-duality", pass,
                    "ratios in [" + format_number(rlo) + ", " + format_number(rhi) +
                        "] vs [" + format_number(rep.interval_lo) + ", " +
                        format_number(rep.interval_hi) + "] (" + consts + ")",
                    ""};
  nlohmann::json j{{"criterion", 12}, {"pass", pass}, {"seed", rep.seed},
                   {"interval", {{"lo", rep.interval_lo}, {"hi", rep.interval_hi}}}};
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : rep.constants)
    cj.push_back({{"name", c.name}, {"value", c.value}, {"provenance", c.provenance}});
  j["constants"] = cj;
  r.payload = payload(cfg, std::move(j), {{"ratio", rep.ratios}});
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteConfig& cfg) {
  switch (id) {
    case 1: return c1_sinnamon(cfg);
    case 2: return c2_hardy(cfg);
    case 3: return c3_unit_hardy(cfg);
    case 4: return c45_seq_duality(cfg, 4);
    case 5: return c45_seq_duality(cfg, 5);
    case 6: return c6_isometry(cfg);
    case 7: return c7_down_chain(cfg);
    case 8: return c8_k_identity(cfg);
    case 9: return c9_pointwise(cfg);
    case 10: return c10_idempotency(cfg);
    case 11: return c11_support_collapse(cfg);
    case 12: return c12_lorentz(cfg);
    default: throw Unsupported("criterion id must be in [1, 12]");
  }
}

std::vector<CriterionResult> run_all(const SuiteConfig& cfg) {
  std::vector<CriterionResult> out(kCriteria);
  par::parallel_for(kCriteria, [&](std::size_t i) {
    out[i] = run_criterion(static_cast<int>(i) + 1, cfg);
  });
  return out;
}

}  // namespace ceslab::suite
