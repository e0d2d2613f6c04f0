#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ceslab/core.hpp"
#include "ceslab/duality.hpp"
#include "ceslab/sampling.hpp"

using namespace ceslab;
using dual::DualMethod;

namespace {
const double kZeta3 = 1.2020569031595943;  // sum 1/n^3
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("sinnamon sup closed form equals the LP on fixtures") {
  const StepFunction f1 = StepFunction::indicator(Domain::half_line(2.0), 0.0, 1.0);
  const StepFunction g12 = StepFunction::indicator(Domain::half_line(2.0), 1.0, 2.0);
  // sup over h majorized by f of ∫ h g: best h pushes all mass of f onto [1,2): 1
  const auto r1 = dual::sinnamon_sup(f1, g12);
  CHECK(r1.lp_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r1.closed_form == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r1.witness.constraint_slack >= -1e-12);

  const StepFunction f2 = StepFunction::indicator(Domain::half_line(2.0), 0.0, 2.0);
  const auto r2 = dual::sinnamon_sup(f2, g12);
  CHECK(r2.lp_value == doctest::Approx(2.0).epsilon(1e-12));

  // unit interval: f ≡ 2, g = 3 on [0,1/2), 1 on [1/2,1): ∫ f·g̃ = 2·(3/2+1/2) = 4
  const StepFunction f3(Domain::unit(), {0.0, 1.0}, {2.0});
  const StepFunction g3(Domain::unit(), {0.0, 0.5, 1.0}, {3.0, 1.0});
  const auto r3 = dual::sinnamon_sup(f3, g3);
  CHECK(r3.closed_form == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r3.lp_value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("sinnamon sup sequence form") {
  const Sequence e1(std::vector<double>{1.0});
  const Sequence e2(std::vector<double>{0.0, 1.0});
  // h ≺ e1 can put its unit mass on slot 2: sup = 1
  const auto r = dual::sinnamon_sup(e1, e2);
  CHECK(r.lp_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.closed_form == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sinnamon LP matches closed form on random inputs") {
  sampling::Rng rng(4242);
  for (int k = 0; k < 30; ++k) {
    const bool unit = k % 2 != 0;
    const Domain d = unit ? Domain::unit() : Domain::half_line(5.0);
    const double span = unit ? 1.0 : 5.0;
    const StepFunction f = sampling::random_step(rng, d, 10, span);
    const StepFunction g = sampling::random_step(rng, d, 10, span, sampling::family_for(k));
    const auto r = dual::sinnamon_sup(f, g);
    const double scale = std::max(1.0, std::abs(r.closed_form));
    CHECK(std::abs(r.lp_value - r.closed_form) / scale < 1e-8);
    CHECK(r.witness.objective == doctest::Approx(r.lp_value).epsilon(1e-9));
    CHECK(r.witness.constraint_slack >= -1e-9 * f.integral());
  }
}

TEST_CASE("associate norms of lp") {
  const Sequence x(std::vector<double>{3.0, 4.0});
  // l2 is self-associate: ||(3,4)||' = 5
  for (DualMethod m : {DualMethod::Exact, DualMethod::Ascent, DualMethod::BruteForce}) {
    CHECK(dual::associate_norm(x, *parse_space("SeqLp 2 one"), m).value ==
          doctest::Approx(5.0).epsilon(1e-6));
  }
  // (l1)' = linf
  const Sequence y(std::vector<double>{1.0, 2.0});
  CHECK(dual::associate_norm(y, *parse_space("SeqLp 1 one"), DualMethod::Exact).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  // brute agrees on a 3-vector in l2: sqrt 3
  const Sequence z(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(dual::associate_norm(z, *parse_space("SeqLp 2 one"), DualMethod::BruteForce).value ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
  // step function: ||(1,3)||_{(L2)'} = ||(1,3)||_2 = sqrt 5 on half cells
  const StepFunction s(Domain::unit(), {0.0, 0.5, 1.0}, {1.0, 3.0});
  CHECK(dual::associate_norm(s, *parse_space("Lp 2 one unit"), DualMethod::Exact).value ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("conjugate spec carries the exact identity") {
  const auto c = dual::conjugate_spec(*parse_space("Lp 2 (pow -0.25) halfline"));
  REQUIRE(c.has_value());
  // associate of L2(x^-1/4) is L2(x^1/4): check by formatting
  CHECK(c->format() == parse_space("Lp 2 (pow 0.25) halfline")->format());
  // Lorentz conjugates to the (unstarred) Marcinkiewicz space of the same gauge
  const auto lc = dual::conjugate_spec(*parse_space("Lorentz (gauge 0 0 1 1)"));
  REQUIRE(lc.has_value());
  CHECK(lc->format().rfind("Mar ", 0) == 0);
  CHECK_FALSE(dual::conjugate_spec(*parse_space("Ces(Lp 2 one halfline)")).has_value());
}

TEST_CASE("cesaro dual norms for sequences") {
  const Sequence e1(std::vector<double>{1.0});
  // (C l_inf)': ||e1|| = 1 (x = e1 has Cx sup = 1)
  CHECK(dual::cesaro_dual_norm(e1, *parse_space("SeqLp inf one")).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  // (C l2)': sqrt6/pi (reciprocal of ||Ce1||_2)
  CHECK(dual::cesaro_dual_norm(e1, *parse_space("SeqLp 2 one")).value ==
        doctest::Approx(std::sqrt(6.0) / kPi).epsilon(1e-10));
  // (C l1(n^-2))': 1/zeta(3)
  CHECK(dual::cesaro_dual_norm(e1, *parse_space("SeqLp 1 (npow -2)")).value ==
        doctest::Approx(1.0 / kZeta3).epsilon(1e-10));
  // C l1 is trivial, so the dual norm of e1 degenerates to 0
  CHECK(dual::cesaro_dual_norm(e1, *parse_space("SeqLp 1 one")).value ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cesaro dual brute force agrees with the exact path") {
  const SpacePtr l2 = parse_space("SeqLp 2 one");
  for (const Sequence& g : {Sequence(std::vector<double>{1.0, 0.5, 0.25}),
                            Sequence(std::vector<double>{0.2, 1.0, 0.1, 0.7})}) {
    const double exact = dual::cesaro_dual_norm(g, *l2).value;
    const double brute = dual::cesaro_dual_brute(g, *l2).value;
    CHECK(std::abs(exact - brute) / exact < 1e-6);
  }
}

TEST_CASE("down norms") {
  const StepFunction one = StepFunction::indicator(Domain::unit(), 0.0, 1.0);
  // For chi_[0,1) the optimal nonincreasing h is chi itself in all three duals
  for (const char* sp : {"Lp 1 one unit", "Lp 2 one unit", "Lp inf one unit"}) {
    const auto r = dual::down_norm(one, *parse_space(sp));
    CHECK(r.norm.value == doctest::Approx(1.0).epsilon(1e-10));
  }
  // f = 1 on [0,1/2), 3 on [1/2,1): down norm over L2 test functions = 2
  const StepFunction f(Domain::unit(), {0.0, 0.5, 1.0}, {1.0, 3.0});
  const auto r = dual::down_norm(f, *parse_space("Lp 2 one unit"));
  CHECK(r.norm.value == doctest::Approx(2.0).epsilon(1e-10));
  // witness h is nonincreasing with unit L2 norm
  const auto& h = r.witness;
  for (std::size_t i = 0; i + 1 < h.cells(); ++i) CHECK(h.values()[i] >= h.values()[i + 1] - 1e-12);
  CHECK(norm(h, *parse_space("Lp 2 one unit")).value == doctest::Approx(1.0).epsilon(1e-8));
  // ascent fallback: down norm over L^{1.5} of a decreasing f equals ||f||_{L3}
  const StepFunction g(Domain::unit(), {0.0, 0.5, 1.0}, {3.0, 1.0});
  const auto ra = dual::down_norm(g, *parse_space("Lp 1.5 one unit"));
  const double want = norm(g, *parse_space("Lp 3 one unit")).value;
  CHECK(std::abs(ra.norm.value - want) / want < 2e-4);
}

TEST_CASE("duality reports pass across the theorem range") {
  struct Case {
    const char* space;
    int theorem;
    std::uint64_t seed;
  };
  struct Made {
    SpacePtr space;
    int theorem;
    std::uint64_t seed;
  };
  std::vector<Made> cases = {
      {parse_space("Lp 2 one halfline"), 2, 11},
      {parse_space("Lp 2 (pow -0.25) halfline"), 3, 12},
      {parse_space("Lp 2 one unit"), 4, 13},
      {parse_space("Lp 2 one unit"), 5, 14},
      {parse_space("SeqLp 2 one"), 6, 15},
      {parse_space("SeqLp 2 (npow -0.25)"), 6, 16},
      {parse_space("Lp inf one unit"), 7, 17},
  };
  {
    // L1 with an explicit step weight: 2 on [0,1), 1/2 on [1,4)
    const Domain d = Domain::half_line(4.0);
    const StepFunction w(d, {0.0, 1.0, 4.0}, {2.0, 0.5});
    cases.push_back({SpaceSpec::lp(1.0, Weight::make(Weight::Explicit{w}), d), 7, 18});
  }
  cases.push_back({SpaceSpec::lorentz(ConcaveGauge::single_knot(1.0, 1.0)), 8, 19});
  {
    // sqrt-like gauge: knots 4^j, values 2^j, j = -10..10
    std::vector<double> kn{0.0}, va{0.0};
    for (int j = -10; j <= 10; ++j) {
      kn.push_back(std::pow(4.0, j));
      va.push_back(std::pow(2.0, j));
    }
    cases.push_back({SpaceSpec::lorentz(ConcaveGauge(kn, va, 0.0)), 8, 20});
  }
  for (const auto& c : cases) {
    const std::string desc = c.space->format();
    CAPTURE(desc);
    CAPTURE(c.theorem);
    const auto rep = dual::duality_report(*c.space, c.theorem, 8, c.seed);
    CHECK(rep.pass);
    CHECK(rep.hypotheses_verified);
    CHECK(rep.ratios.size() == 8);
    for (double r : rep.ratios) {
      CHECK(r >= rep.interval_lo * (1.0 - dual::DualityReport::kTolerance));
      CHECK(r <= rep.interval_hi * (1.0 + dual::DualityReport::kTolerance));
    }
  }
}

TEST_CASE("report serialization carries the verdict") {
  const auto rep = dual::duality_report(*parse_space("SeqLp 2 one"), 6, 4, 21);
  const std::string js = dual::report_json(rep);
  CHECK(js.find("\"theorem\": 6") != std::string::npos);
  CHECK(js.find("\"pass\"") != std::string::npos);
  const std::string cs = dual::report_csv(rep);
  CHECK(cs.find("ratio") != std::string::npos);
  CHECK(cs.rfind("sample", 0) == 0);  // header row first
}
