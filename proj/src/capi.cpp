// C ABI shim: thin guards around the C++ core. Exceptions map to status
// codes; messages land in a thread-local buffer read by ceslab_last_error.
#include "ceslab/ceslab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ceslab/core.hpp"
#include "ceslab/duality.hpp"
#include "ceslab/inequalities.hpp"
#include "ceslab/interpolation.hpp"
#include "ceslab/norms.hpp"
#include "ceslab/operators.hpp"
#include "ceslab/sampling.hpp"
#include "ceslab/suite.hpp"

using namespace ceslab;

struct ceslab_step {
  StepFunction fn;
};
struct ceslab_seq {
  Sequence s;
};
struct ceslab_space {
  SpacePtr sp;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
int guarded(F&& body) {
  try {
    g_error.clear();
    return body();
  } catch (const ParseError& e) {
    g_error = e.what();
    return CESLAB_EPARSE;
  } catch (const DomainMismatch& e) {
    g_error = e.what();
    return CESLAB_EDOMAIN;
  } catch (const Unsupported& e) {
    g_error = e.what();
    return CESLAB_EUNSUPPORTED;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return CESLAB_EINVAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return CESLAB_EINTERNAL;
  }
}

int invalid(const char* msg) {
  g_error = msg;
  return CESLAB_EINVAL;
}

int write_norm(const NormValue& v, double* value, double* error_bound) {
  if (value) *value = v.value;
  if (error_bound) *error_bound = v.error_bound;
  return CESLAB_OK;
}

// Random or near-extremal Hardy table; shared by the CLI `hardy` subcommand.
std::string hardy_table(double p, double alpha, int domain_kind, bool extremal,
                        std::size_t samples, std::uint64_t seed, bool& all_pass) {
  const double invp = std::isinf(p) ? 0.0 : 1.0 / p;
  if (!(alpha < 1.0 - invp))
    throw Unsupported("hardy table: need alpha < 1 - 1/p");
  std::ostringstream os;
  os << "sample,lhs,rhs,margin\n";
  all_pass = true;
  if (extremal) {
    if (domain_kind == CESLAB_DOMAIN_HALFLINE && alpha != 0.0)
      throw Unsupported("extremal family on the half-line: only alpha = 0");
    const double K = 1.0 / (1.0 - alpha - invp);
    const double pp = p / (p - 1.0);
    for (std::size_t i = 0; i < samples; ++i) {
      const double eps = 0.01 * std::pow(2.0, -static_cast<double>(i));
      double lhs, rhs;
      if (domain_kind == CESLAB_DOMAIN_UNIT) {
        lhs = 1.0 / (1.0 - alpha - invp + eps);  // exact ratio of f = x^{eps-1/p-a}
        rhs = K;
      } else {
        lhs = ineq::hardy_extremal_ratio(p, eps);
        rhs = pp;
      }
      all_pass = all_pass && lhs <= rhs * (1.0 + ineq::kPassTol);
      os << i << "," << format_number(lhs) << "," << format_number(rhs) << ","
         << format_number(rhs - lhs) << "\n";
    }
    return os.str();
  }
  for (std::size_t k = 0; k < samples; ++k) {
    sampling::Rng rng(sampling::mix_seed(seed, k));
    const bool unit = domain_kind == CESLAB_DOMAIN_UNIT;
    const double span = unit ? 1.0 : rng.log_uniform(0.5, 50.0);
    const Domain d = unit ? Domain::unit() : Domain::half_line(span);
    StepFunction f = sampling::random_step(rng, d, 24, span, sampling::family_for(k));
    if (alpha < 0.0) {
      // keep x^{alpha p} integrable against |f|^p near the origin
      const double cut = span * rng.uniform(0.02, 0.3);
      std::vector<double> knots{0.0, cut, span};
      auto grid = merge_breakpoints({&f.breakpoints(), &knots}, span);
      std::vector<double> vals(grid.size() - 1, 0.0);
      bool nz = false;
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double mid = 0.5 * (grid[i] + grid[i + 1]);
        vals[i] = mid >= cut ? f(mid) : 0.0;
        nz = nz || vals[i] != 0.0;
      }
      if (!nz) vals.back() = 1.0;
      f = StepFunction(d, grid, std::move(vals));
    }
    const auto c = ineq::check_hardy_power(f, p, alpha);
    all_pass = all_pass && c.pass;
    os << k << "," << format_number(c.lhs) << "," << format_number(c.rhs) << ","
       << format_number(c.margin) << "\n";
  }
  return os.str();
}

}  // namespace

extern "C" {

const char* ceslab_version(void) { return "1.0.0"; }

const char* ceslab_last_error(void) { return g_error.c_str(); }

void ceslab_string_free(char* s) { std::free(s); }

int ceslab_step_create(int domain_kind, const double* breakpoints,
                       size_t n_breakpoints, const double* values, size_t n_values,
                       ceslab_step** out) {
  if (!out || !breakpoints || !values) return invalid("null pointer");
  if (domain_kind != CESLAB_DOMAIN_UNIT && domain_kind != CESLAB_DOMAIN_HALFLINE)
    return invalid("domain_kind must be 0 (unit) or 1 (half-line)");
  if (n_breakpoints != n_values + 1) return invalid("need n_values + 1 breakpoints");
  return guarded([&] {
    std::vector<double> bp(breakpoints, breakpoints + n_breakpoints);
    std::vector<double> va(values, values + n_values);
    const Domain d = domain_kind == CESLAB_DOMAIN_UNIT ? Domain::unit()
                                                       : Domain::half_line(bp.back());
    *out = new ceslab_step{StepFunction(d, std::move(bp), std::move(va))};
    return CESLAB_OK;
  });
}

int ceslab_step_from_json(const char* text, ceslab_step** out) {
  if (!out || !text) return invalid("null pointer");
  return guarded([&] {
    *out = new ceslab_step{StepFunction::from_json(text)};
    return CESLAB_OK;
  });
}

int ceslab_step_to_json(const ceslab_step* f, char** out) {
  if (!f || !out) return invalid("null pointer");
  return guarded([&] {
    *out = dup_string(f->fn.to_json());
    return *out ? CESLAB_OK : CESLAB_EINTERNAL;
  });
}

int ceslab_step_eval(const ceslab_step* f, double x, double* out) {
  if (!f || !out) return invalid("null pointer");
  return guarded([&] {
    *out = f->fn(x);
    return CESLAB_OK;
  });
}

void ceslab_step_free(ceslab_step* f) { delete f; }

int ceslab_seq_create(const double* values, size_t n, ceslab_seq** out) {
  if (!out || (!values && n > 0)) return invalid("null pointer");
  return guarded([&] {
    *out = new ceslab_seq{Sequence(std::vector<double>(values, values + n))};
    return CESLAB_OK;
  });
}

int ceslab_seq_from_json(const char* text, ceslab_seq** out) {
  if (!out || !text) return invalid("null pointer");
  return guarded([&] {
    const auto j = nlohmann::json::parse(std::string(text), nullptr, false);
    if (!j.is_array()) throw ParseError("sequence: expected a JSON array of numbers");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) {
      if (!e.is_number()) throw ParseError("sequence: expected a JSON array of numbers");
      v.push_back(e.get<double>());
    }
    *out = new ceslab_seq{Sequence(std::move(v))};
    return CESLAB_OK;
  });
}

void ceslab_seq_free(ceslab_seq* s) { delete s; }

int ceslab_space_parse(const char* text, ceslab_space** out) {
  if (!out || !text) return invalid("null pointer");
  return guarded([&] {
    *out = new ceslab_space{parse_space(text)};
    return CESLAB_OK;
  });
}

int ceslab_space_format(const ceslab_space* s, char** out) {
  if (!s || !out) return invalid("null pointer");
  return guarded([&] {
    *out = dup_string(s->sp->format());
    return *out ? CESLAB_OK : CESLAB_EINTERNAL;
  });
}

void ceslab_space_free(ceslab_space* s) { delete s; }

int ceslab_norm(const ceslab_step* f, const ceslab_space* X, double* value,
                double* error_bound) {
  if (!f || !X) return invalid("null pointer");
  return guarded([&] { return write_norm(norm(f->fn, *X->sp), value, error_bound); });
}

int ceslab_seq_norm(const ceslab_seq* x, const ceslab_space* X, double* value,
                    double* error_bound) {
  if (!x || !X) return invalid("null pointer");
  return guarded([&] { return write_norm(seq_norm(x->s, *X->sp), value, error_bound); });
}

int ceslab_associate_norm(const ceslab_step* g, const ceslab_space* X, double* value,
                          double* error_bound) {
  if (!g || !X) return invalid("null pointer");
  return guarded([&] {
    NormValue v;
    try {
      v = dual::associate_norm(g->fn, *X->sp, dual::DualMethod::Exact);
    } catch (const Unsupported&) {
      v = dual::associate_norm(g->fn, *X->sp, dual::DualMethod::Ascent);
    }
    return write_norm(v, value, error_bound);
  });
}

int ceslab_cesaro_dual_norm(const ceslab_seq* g, const ceslab_space* X, double* value,
                            double* error_bound) {
  if (!g || !X) return invalid("null pointer");
  return guarded(
      [&] { return write_norm(dual::cesaro_dual_norm(g->s, *X->sp), value, error_bound); });
}

int ceslab_down_norm(const ceslab_step* f, const ceslab_space* Xprime, double* value,
                     double* error_bound) {
  if (!f || !Xprime) return invalid("null pointer");
  return guarded([&] {
    return write_norm(dual::down_norm(f->fn, *Xprime->sp).norm, value, error_bound);
  });
}

int ceslab_sinnamon(const ceslab_step* f, const ceslab_step* g, double* lp_value,
                    double* closed_form, double* witness_slack) {
  if (!f || !g) return invalid("null pointer");
  return guarded([&] {
    const auto r = dual::sinnamon_sup(f->fn, g->fn);
    if (lp_value) *lp_value = r.lp_value;
    if (closed_form) *closed_form = r.closed_form;
    if (witness_slack) *witness_slack = r.witness.constraint_slack;
    return CESLAB_OK;
  });
}

int ceslab_seq_sinnamon(const ceslab_seq* f, const ceslab_seq* g, double* lp_value,
                        double* closed_form, double* witness_slack) {
  if (!f || !g) return invalid("null pointer");
  return guarded([&] {
    const auto r = dual::sinnamon_sup(f->s, g->s);
    if (lp_value) *lp_value = r.lp_value;
    if (closed_form) *closed_form = r.closed_form;
    if (witness_slack) *witness_slack = r.witness.constraint_slack;
    return CESLAB_OK;
  });
}

int ceslab_k_functional(const ceslab_step* f, double t, double* out) {
  if (!f || !out) return invalid("null pointer");
  return guarded([&] {
    *out = interp::k_functional(f->fn, t);
    return CESLAB_OK;
  });
}

int ceslab_k_decomposition(const ceslab_step* f, double t, const char* weight_text,
                           char** json_out) {
  if (!f || !weight_text || !json_out) return invalid("null pointer");
  return guarded([&] {
    const WeightPtr w = parse_weight(weight_text);
    *json_out = dup_string(interp::kdecomp_json(interp::k_functional_weighted(f->fn, t, w)));
    return *json_out ? CESLAB_OK : CESLAB_EINTERNAL;
  });
}

int ceslab_duality_report(const char* space_text, int theorem, size_t samples,
                          uint64_t seed, const char* format, char** out, int* pass) {
  if (!space_text || !format || !out) return invalid("null pointer");
  const std::string fmt(format);
  if (fmt != "json" && fmt != "csv") return invalid("format must be json or csv");
  if (samples == 0) return invalid("samples must be positive");
  return guarded([&] {
    const SpacePtr sp = parse_space(space_text);
    const auto rep = dual::duality_report(*sp, theorem, samples, seed);
    *out = dup_string(fmt == "json" ? dual::report_json(rep) : dual::report_csv(rep));
    if (!*out) return CESLAB_EINTERNAL;
    if (pass) *pass = rep.pass ? 1 : 0;
    return CESLAB_OK;
  });
}

int ceslab_hardy_csv(double p, double alpha, int domain_kind, int family_extremal,
                     size_t samples, uint64_t seed, char** out, int* pass) {
  if (!out) return invalid("null pointer");
  if (domain_kind != CESLAB_DOMAIN_UNIT && domain_kind != CESLAB_DOMAIN_HALFLINE)
    return invalid("domain_kind must be 0 (unit) or 1 (half-line)");
  if (samples == 0) return invalid("samples must be positive");
  return guarded([&] {
    bool ok = false;
    *out = dup_string(
        hardy_table(p, alpha, domain_kind, family_extremal != 0, samples, seed, ok));
    if (!*out) return CESLAB_EINTERNAL;
    if (pass) *pass = ok ? 1 : 0;
    return CESLAB_OK;
  });
}

int ceslab_plot_csv(const ceslab_step* f, size_t points, char** out) {
  if (!f || !out) return invalid("null pointer");
  if (points == 0) return invalid("points must be positive");
  return guarded([&] {
    const StepFunction& fn = f->fn;
    const PiecewiseLinear F = fn.partial_integral();
    const StepFunction tilde = ops::majorant(fn);
    const double H = fn.domain().horizon;
    const double reach = fn.domain().kind == DomainKind::HalfLine ? 2.0 * H : H;
    std::ostringstream os;
    os << "x,f,cf,tilde\n";
    for (std::size_t i = 0; i < points; ++i) {
      const double x = reach * static_cast<double>(i + 1) / static_cast<double>(points);
      os << format_number(x) << "," << format_number(fn(x)) << ","
         << format_number(F(x) / x) << "," << format_number(tilde(x)) << "\n";
    }
    *out = dup_string(os.str());
    return *out ? CESLAB_OK : CESLAB_EINTERNAL;
  });
}

int ceslab_suite_count(void) { return suite::kCriteria; }

int ceslab_suite_criterion(int id, uint64_t seed, size_t samples, double tolerance,
                           const char* format, char** payload_out, char** name_out,
                           char** detail_out, int* pass) {
  if (!format) return invalid("null pointer");
  const std::string fmt(format);
  if (fmt != "json" && fmt != "csv") return invalid("format must be json or csv");
  if (id < 1 || id > suite::kCriteria) return invalid("criterion id out of range");
  return guarded([&] {
    suite::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.tolerance = tolerance;
    cfg.format = fmt;
    const auto r = suite::run_criterion(id, cfg);
    if (payload_out && !(*payload_out = dup_string(r.payload))) return CESLAB_EINTERNAL;
    if (name_out && !(*name_out = dup_string(r.name))) return CESLAB_EINTERNAL;
    if (detail_out && !(*detail_out = dup_string(r.detail))) return CESLAB_EINTERNAL;
    if (pass) *pass = r.pass ? 1 : 0;
    return CESLAB_OK;
  });
}

int ceslab_suite_run(uint64_t seed, size_t samples, double tolerance, const char* format,
                     const char* out_dir, char** summary_out, int* all_pass) {
  if (!format) return invalid("null pointer");
  const std::string fmt(format);
  if (fmt != "json" && fmt != "csv") return invalid("format must be json or csv");
  return guarded([&] {
    suite::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.tolerance = tolerance;
    cfg.format = fmt;
    const auto results = suite::run_all(cfg);

    std::ostringstream os;
    os << "id,name,pass,detail\n";
    bool ok = true;
    for (const auto& r : results) {
      std::string quoted = r.detail;
      std::string::size_type at = 0;
      while ((at = quoted.find('"', at)) != std::string::npos) {
        quoted.replace(at, 1, "\"\"");
        at += 2;
      }
      os << r.id << "," << r.name << "," << (r.pass ? 1 : 0) << ",\"" << quoted << "\"\n";
      ok = ok && r.pass;
    }
    const std::string summary = os.str();

    if (out_dir) {
      namespace fs = std::filesystem;
      const fs::path dir(out_dir);
      fs::create_directories(dir);
      for (const auto& r : results) {
        char name[32];
        std::snprintf(name, sizeof name, "criterion_%02d.%s", r.id, fmt.c_str());
        std::ofstream fo(dir / name, std::ios::binary);
        fo << r.payload;
        if (!fo) throw std::runtime_error("cannot write " + (dir / name).string());
      }
      std::ofstream so(dir / "summary.csv", std::ios::binary);
      so << summary;
      if (!so) throw std::runtime_error("cannot write " + (dir / "summary.csv").string());
    }

    if (summary_out && !(*summary_out = dup_string(summary))) return CESLAB_EINTERNAL;
    if (all_pass) *all_pass = ok ? 1 : 0;
    return CESLAB_OK;
  });
}

}  // extern "C"
