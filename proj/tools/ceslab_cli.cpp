// Command-line front end. Talks to the library exclusively through the C API;
// stdout carries machine-readable JSON/CSV, diagnostics go to stderr.
// Exit codes: 0 ok, 1 check failed, 2 parse/config error, 3 domain/unsupported,
// 4 internal error.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ceslab/ceslab.h"

namespace {

int status_exit(int st) {
  switch (st) {
    case CESLAB_OK: return 0;
    case CESLAB_EPARSE:
    case CESLAB_EINVAL: return 2;
    case CESLAB_EDOMAIN:
    case CESLAB_EUNSUPPORTED: return 3;
    default: return 4;
  }
}

// Report a failed call and return its process exit code.
int fail(int st, const std::string& what) {
  std::cerr << "error: " << what << ": " << ceslab_last_error() << "\n";
  return status_exit(st);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct StepGuard {
  ceslab_step* p = nullptr;
  ~StepGuard() { ceslab_step_free(p); }
};
struct SeqGuard {
  ceslab_seq* p = nullptr;
  ~SeqGuard() { ceslab_seq_free(p); }
};
struct SpaceGuard {
  ceslab_space* p = nullptr;
  ~SpaceGuard() { ceslab_space_free(p); }
};
struct StrGuard {
  char* p = nullptr;
  ~StrGuard() { ceslab_string_free(p); }
};

int load_step(const std::string& path, StepGuard& f) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return 2;
  }
  if (int st = ceslab_step_from_json(text.c_str(), &f.p); st != CESLAB_OK)
    return fail(st, path);
  return 0;
}

int load_seq(const std::string& path, SeqGuard& s) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return 2;
  }
  if (int st = ceslab_seq_from_json(text.c_str(), &s.p); st != CESLAB_OK)
    return fail(st, path);
  return 0;
}

// ---- norm ------------------------------------------------------------------

struct NormArgs {
  std::string space, input, kind = "plain";
  bool seq = false;
};

int cmd_norm(const NormArgs& a) {
  SpaceGuard X;
  if (int st = ceslab_space_parse(a.space.c_str(), &X.p); st != CESLAB_OK)
    return fail(st, "space");
  double v = 0.0, eb = 0.0;
  int st;
  if (a.seq) {
    SeqGuard x;
    if (int rc = load_seq(a.input, x)) return rc;
    st = a.kind == "dual" ? ceslab_cesaro_dual_norm(x.p, X.p, &v, &eb)
                          : ceslab_seq_norm(x.p, X.p, &v, &eb);
    if (a.kind != "dual" && a.kind != "plain") {
      std::cerr << "error: --kind " << a.kind << " needs a function input\n";
      return 2;
    }
  } else {
    StepGuard f;
    if (int rc = load_step(a.input, f)) return rc;
    if (a.kind == "plain") st = ceslab_norm(f.p, X.p, &v, &eb);
    else if (a.kind == "associate") st = ceslab_associate_norm(f.p, X.p, &v, &eb);
    else if (a.kind == "down") st = ceslab_down_norm(f.p, X.p, &v, &eb);
    else {
      std::cerr << "error: --kind dual needs --seq\n";
      return 2;
    }
  }
  if (st != CESLAB_OK) return fail(st, "norm");
  std::ostringstream os;
  os.precision(17);
  os << "{\"value\":" << v << ",\"error_bound\":" << eb << "}";
  std::cout << os.str() << "\n";
  return 0;
}

// ---- dual-report -------------------------------------------------------------

struct ReportArgs {
  std::string space, format = "json", out;
  int theorem = 0;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

int cmd_dual_report(const ReportArgs& a) {
  StrGuard text;
  int pass = 0;
  int st = ceslab_duality_report(a.space.c_str(), a.theorem, a.samples, a.seed,
                                 a.format.c_str(), &text.p, &pass);
  if (st != CESLAB_OK) return fail(st, "dual-report");
  std::cout << text.p;
  if (!a.out.empty() && !write_file(a.out, text.p)) {
    std::cerr << "error: cannot write " << a.out << "\n";
    return 4;
  }
  if (!pass) std::cerr << "dual-report: ratios left the proven interval\n";
  return pass ? 0 : 1;
}

// ---- sinnamon -----------------------------------------------------------------

struct SinnamonArgs {
  std::string f, g;
  bool seq = false;
};

int cmd_sinnamon(const SinnamonArgs& a) {
  double lp = 0.0, cf = 0.0, slack = 0.0;
  int st;
  if (a.seq) {
    SeqGuard f, g;
    if (int rc = load_seq(a.f, f)) return rc;
    if (int rc = load_seq(a.g, g)) return rc;
    st = ceslab_seq_sinnamon(f.p, g.p, &lp, &cf, &slack);
  } else {
    StepGuard f, g;
    if (int rc = load_step(a.f, f)) return rc;
    if (int rc = load_step(a.g, g)) return rc;
    st = ceslab_sinnamon(f.p, g.p, &lp, &cf, &slack);
  }
  if (st != CESLAB_OK) return fail(st, "sinnamon");
  std::ostringstream os;
  os.precision(17);
  os << "{\"lp_value\":" << lp << ",\"closed_form\":" << cf
     << ",\"witness_slack\":" << slack << "}";
  std::cout << os.str() << "\n";
  return 0;
}

// ---- hardy ---------------------------------------------------------------------

struct HardyArgs {
  double p = 2.0, alpha = 0.0;
  std::string domain = "unit", family = "random";
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

int cmd_hardy(const HardyArgs& a) {
  StrGuard csv;
  int pass = 0;
  const int dk = a.domain == "unit" ? CESLAB_DOMAIN_UNIT : CESLAB_DOMAIN_HALFLINE;
  int st = ceslab_hardy_csv(a.p, a.alpha, dk, a.family == "extremal" ? 1 : 0, a.samples,
                            a.seed, &csv.p, &pass);
  if (st != CESLAB_OK) return fail(st, "hardy");
  std::cout << csv.p;
  if (!pass) std::cerr << "hardy: at least one sample exceeded the constant\n";
  return pass ? 0 : 1;
}

// ---- kfun ----------------------------------------------------------------------

struct KfunArgs {
  std::string input, weight;
  double t = 1.0;
};

int cmd_kfun(const KfunArgs& a) {
  StepGuard f;
  if (int rc = load_step(a.input, f)) return rc;
  if (a.weight.empty()) {
    double v = 0.0;
    if (int st = ceslab_k_functional(f.p, a.t, &v); st != CESLAB_OK)
      return fail(st, "kfun");
    std::ostringstream os;
    os.precision(17);
    os << "{\"t\":" << a.t << ",\"value\":" << v << "}";
    std::cout << os.str() << "\n";
    return 0;
  }
  StrGuard json;
  if (int st = ceslab_k_decomposition(f.p, a.t, a.weight.c_str(), &json.p);
      st != CESLAB_OK)
    return fail(st, "kfun");
  std::cout << json.p << "\n";
  return 0;
}

// ---- plotdata -------------------------------------------------------------------

struct PlotArgs {
  std::string input;
  std::size_t points = 100;
};

int cmd_plotdata(const PlotArgs& a) {
  StepGuard f;
  if (int rc = load_step(a.input, f)) return rc;
  StrGuard csv;
  if (int st = ceslab_plot_csv(f.p, a.points, &csv.p); st != CESLAB_OK)
    return fail(st, "plotdata");
  std::cout << csv.p;
  return 0;
}

// ---- suite ----------------------------------------------------------------------

struct SuiteArgs {
  std::uint64_t seed = 7001;
  std::size_t samples = 0;
  double tolerance = -1.0;
  std::string format = "json", out;
  int criterion = 0;
};

int cmd_suite(const SuiteArgs& a) {
  if (a.criterion > 0) {
    StrGuard payload, name, detail;
    int pass = 0;
    int st = ceslab_suite_criterion(a.criterion, a.seed, a.samples, a.tolerance,
                                    a.format.c_str(), &payload.p, &name.p, &detail.p,
                                    &pass);
    if (st != CESLAB_OK) return fail(st, "suite");
    std::cout << payload.p << "\n";
    std::cerr << "[" << (pass ? "PASS" : "FAIL") << "] " << a.criterion << " " << name.p
              << " — " << detail.p << "\n";
    return pass ? 0 : 1;
  }
  StrGuard summary;
  int all_pass = 0;
  int st = ceslab_suite_run(a.seed, a.samples, a.tolerance, a.format.c_str(),
                            a.out.empty() ? nullptr : a.out.c_str(), &summary.p,
                            &all_pass);
  if (st != CESLAB_OK) return fail(st, "suite");
  std::cout << summary.p;
  if (!all_pass) std::cerr << "suite: at least one criterion failed\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cesàro / level-function space calculator"};
  app.require_subcommand(1);

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "Norm of a function or sequence in a space");
  norm->add_option("--space", na.space, "space s-expression")->required();
  norm->add_option("--input", na.input, "JSON input file")->required();
  norm->add_option("--kind", na.kind, "plain | associate | down | dual")
      ->check(CLI::IsMember({"plain", "associate", "down", "dual"}));
  norm->add_flag("--seq", na.seq, "input is a JSON array (sequence)");

  ReportArgs ra;
  auto* rep = app.add_subcommand("dual-report", "Sampled duality-theorem report");
  rep->add_option("--space", ra.space, "space s-expression")->required();
  rep->add_option("--theorem", ra.theorem, "theorem number (2-8)")->required();
  rep->add_option("--samples", ra.samples, "sample count");
  rep->add_option("--seed", ra.seed, "base RNG seed");
  rep->add_option("--format", ra.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  rep->add_option("--out", ra.out, "also write the report to this file");

  SinnamonArgs sa;
  auto* sin = app.add_subcommand("sinnamon", "Level-function supremum, both evaluations");
  sin->add_option("--f", sa.f, "JSON input file")->required();
  sin->add_option("--g", sa.g, "JSON input file")->required();
  sin->add_flag("--seq", sa.seq, "inputs are JSON arrays (sequences)");

  HardyArgs ha;
  auto* hardy = app.add_subcommand("hardy", "Hardy-inequality sample table (CSV)");
  hardy->add_option("--p", ha.p, "exponent")->required();
  hardy->add_option("--alpha", ha.alpha, "power-weight exponent");
  hardy->add_option("--domain", ha.domain, "unit | halfline")
      ->check(CLI::IsMember({"unit", "halfline"}));
  hardy->add_option("--family", ha.family, "random | extremal")
      ->check(CLI::IsMember({"random", "extremal"}));
  hardy->add_option("--samples", ha.samples, "sample count");
  hardy->add_option("--seed", ha.seed, "base RNG seed");

  KfunArgs ka;
  auto* kfun = app.add_subcommand("kfun", "K-functional (optionally weighted couple)");
  kfun->add_option("--input", ka.input, "JSON input file")->required();
  kfun->add_option("--t", ka.t, "evaluation point")->required();
  kfun->add_option("--weight", ka.weight,
                   "weight s-expression; emits the optimal decomposition");

  PlotArgs pa;
  auto* plot = app.add_subcommand("plotdata", "CSV of (x, f, Cf, majorant) on a grid");
  plot->add_option("--input", pa.input, "JSON input file")->required();
  plot->add_option("--points", pa.points, "grid size");

  SuiteArgs ua;
  auto* suite = app.add_subcommand("suite", "Acceptance suite (all criteria or one)");
  suite->add_option("--seed", ua.seed, "base RNG seed");
  suite->add_option("--samples", ua.samples, "per-family sample override (0 = defaults)");
  suite->add_option("--tolerance", ua.tolerance, "tolerance override (<0 = defaults)");
  suite->add_option("--format", ua.format, "json | csv payloads")
      ->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--out", ua.out, "directory for per-criterion payloads + summary.csv");
  suite->add_option("--criterion", ua.criterion, "run a single criterion (1-12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints CLI11's message (help goes to stdout, errors to stderr)
    return e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ? 0 : 2;
  }

  if (norm->parsed()) return cmd_norm(na);
  if (rep->parsed()) return cmd_dual_report(ra);
  if (sin->parsed()) return cmd_sinnamon(sa);
  if (hardy->parsed()) return cmd_hardy(ha);
  if (kfun->parsed()) return cmd_kfun(ka);
  if (plot->parsed()) return cmd_plotdata(pa);
  if (suite->parsed()) return cmd_suite(ua);
  return 2;
}
