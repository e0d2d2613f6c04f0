#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ceslab/core.hpp"
#include "ceslab/operators.hpp"
#include "ceslab/sampling.hpp"

using namespace ceslab;

namespace {
constexpr double kTight = 1e-12;
}

TEST_CASE("cesaro image of an indicator") {
  // f = χ[0,1] on the half line: Cf = 1 on (0,1], = 1/x beyond.
  const StepFunction f = StepFunction::indicator(Domain::half_line(1.0), 0.0, 1.0);
  const ops::CesaroImage cf = ops::cesaro(f);
  CHECK(cf(1e-9) == doctest::Approx(1.0).epsilon(kTight));
  CHECK(cf(0.5) == doctest::Approx(1.0).epsilon(kTight));
  CHECK(cf(4.0) == doctest::Approx(0.25).epsilon(kTight));
  CHECK(cf.tail_mass() == doctest::Approx(1.0).epsilon(kTight));
  CHECK(cf.max_value() == doctest::Approx(1.0).epsilon(kTight));
  // ∫_0^2 Cf = 1 + ln 2 exactly (1 over [0,1], log tail beyond)
  CHECK(cf.integral_to(2.0) == doctest::Approx(1.0 + std::log(2.0)).epsilon(kTight));
}

TEST_CASE("cesaro image piecewise form b + a/x") {
  const StepFunction f(Domain::unit(), {0.0, 0.5, 1.0}, {2.0, 0.0});
  const ops::CesaroImage cf = ops::cesaro(f);
  // On [0,.5): Cf = 2; on [.5,1): Cf = 1/x.
  CHECK(cf(0.25) == doctest::Approx(2.0).epsilon(kTight));
  CHECK(cf(0.75) == doctest::Approx(1.0 / 0.75).epsilon(kTight));
  CHECK(cf(1.0) == doctest::Approx(1.0).epsilon(kTight));
}

TEST_CASE("cesaro matches brute quadrature on random samples") {
  sampling::Rng rng(314);
  for (int k = 0; k < 25; ++k) {
    const bool unit = k % 2 != 0;
    const StepFunction f = sampling::random_step(
        rng, unit ? Domain::unit() : Domain::half_line(3.0), 8, unit ? 1.0 : 3.0);
    const ops::CesaroImage cf = ops::cesaro(f);
    const PiecewiseLinear F = f.partial_integral();
    for (double x : {0.1, 0.37, 0.93, 1.7, 2.9}) {
      if (x >= f.domain().horizon && f.domain().kind == DomainKind::UnitInterval) continue;
      const double want = F(x) / x;
      CHECK(cf(x) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("iterated average has exact log closed form") {
  // f = χ[0,1]: CCf(x) = 1 for x<=1... actually (1/x)∫_0^x Cf; at x=2 it is
  // (1 + ln 2)/2 by the integral above.
  const StepFunction f = StepFunction::indicator(Domain::half_line(1.0), 0.0, 1.0);
  const ops::CesaroOfCesaro ccf(f);
  CHECK(ccf(0.5) == doctest::Approx(1.0).epsilon(kTight));
  CHECK(ccf(2.0) == doctest::Approx((1.0 + std::log(2.0)) / 2.0).epsilon(kTight));
}

TEST_CASE("copson operator log closed form") {
  // f = χ[0,1] on [0,1]: C*f(x) = ∫_x^1 dt/t = -ln x.
  const StepFunction f = StepFunction::indicator(Domain::unit(), 0.0, 1.0);
  const ops::CopsonImage cs = ops::copson(f);
  CHECK(cs(0.25) == doctest::Approx(std::log(4.0)).epsilon(kTight));
  CHECK(cs(1.0) == doctest::Approx(0.0).epsilon(kTight));
  // indicator of [1/2,1]: C*f(x) = ln(1/(1/2)) = ln 2 for x <= 1/2
  const StepFunction g = StepFunction::indicator(Domain::unit(), 0.5, 1.0);
  CHECK(ops::copson(g)(0.1) == doctest::Approx(std::log(2.0)).epsilon(kTight));
}

TEST_CASE("majorant is the suffix sup") {
  const StepFunction f(Domain::unit(), {0.0, 0.25, 0.5, 1.0}, {1.0, -3.0, 2.0});
  const StepFunction m = ops::majorant(f);
  CHECK(m(0.1) == 3.0);
  CHECK(m(0.3) == 3.0);
  CHECK(m(0.7) == 2.0);
  // majorant is nonincreasing and dominates |f|
  for (double x : {0.01, 0.2, 0.4, 0.6, 0.99}) CHECK(m(x) >= std::abs(f(x)));
}

TEST_CASE("dilation on unit interval clips support") {
  const StepFunction f = StepFunction::indicator(Domain::unit(), 0.0, 1.0);
  const StepFunction d = ops::dilation(f, 0.5);  // f(x/τ): support [0, 1/2)
  CHECK(d(0.25) == 1.0);
  CHECK(d(0.75) == 0.0);
  const StepFunction e = ops::dilation(f, 2.0);  // support [0,2) ∩ [0,1)
  CHECK(e(0.99) == 1.0);
  // half line: mass scales by τ
  const StepFunction h = StepFunction::indicator(Domain::half_line(1.0), 0.0, 1.0);
  CHECK(ops::dilation(h, 3.0).integral() == doctest::Approx(3.0).epsilon(kTight));
}

TEST_CASE("sequence dilation repeats entries") {
  const Sequence x(std::vector<double>{5.0, 7.0});
  const Sequence y = ops::dilation_seq(x, 3);
  CHECK(y.support() == 6);
  CHECK(y.at1(1) == 5.0);
  CHECK(y.at1(3) == 5.0);
  CHECK(y.at1(4) == 7.0);
  CHECK(y.at1(6) == 7.0);
}

TEST_CASE("discrete cesaro averages") {
  const Sequence x(std::vector<double>{3.0, 1.0, 2.0});
  const auto c = ops::cesaro_seq(x, 5);
  REQUIRE(c.size() == 5);
  CHECK(c[0] == doctest::Approx(3.0).epsilon(kTight));
  CHECK(c[1] == doctest::Approx(2.0).epsilon(kTight));
  CHECK(c[2] == doctest::Approx(2.0).epsilon(kTight));
  CHECK(c[4] == doctest::Approx(6.0 / 5.0).epsilon(kTight));
}

TEST_CASE("substitution sigma is an increasing bijection of the unit interval") {
  CHECK(ops::subst_sigma(0.0) == doctest::Approx(0.0).epsilon(kTight));
  CHECK(ops::subst_sigma(1.0) == doctest::Approx(1.0).epsilon(kTight));
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double t = i / 20.0;
    const double s = ops::subst_sigma(t);
    CHECK(s > prev);
    CHECK(ops::subst_sigma_inv(s) == doctest::Approx(t).epsilon(1e-12));
    CHECK(ops::subst_d(t) == doctest::Approx(t + std::exp(1.0) * (1.0 - t)).epsilon(kTight));
    prev = s;
  }
}

TEST_CASE("substitution operator composes exactly") {
  sampling::Rng rng(99);
  const StepFunction h = sampling::random_step(rng, Domain::unit(), 10, 1.0);
  const StepFunction th = ops::substitution_T(h);
  for (double x : {0.05, 0.31, 0.52, 0.77, 0.94}) {
    CHECK(th(x) == doctest::Approx(h(ops::subst_sigma(x))).epsilon(1e-12));
  }
}

TEST_CASE("decreasing rearrangement sorts by measure") {
  const StepFunction f(Domain::unit(), {0.0, 0.25, 0.75, 1.0}, {1.0, 3.0, 2.0});
  const StepFunction r = ops::decreasing_rearrangement(f);
  // values 3 (length .5), 2 (length .25), 1 (length .25)
  CHECK(r(0.1) == 3.0);
  CHECK(r(0.49) == 3.0);
  CHECK(r(0.6) == 2.0);
  CHECK(r(0.8) == 1.0);
  CHECK(r.integral() == doctest::Approx(f.abs().integral()).epsilon(kTight));
  // rearrangement of a nonincreasing function is itself
  const StepFunction g(Domain::unit(), {0.0, 0.5, 1.0}, {4.0, 1.0});
  const StepFunction rg = ops::decreasing_rearrangement(g);
  CHECK(rg(0.25) == 4.0);
  CHECK(rg(0.75) == 1.0);
}
