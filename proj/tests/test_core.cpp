#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ceslab/core.hpp"

using namespace ceslab;

TEST_CASE("step function basics") {
  StepFunction f(Domain::unit(), {0.0, 0.25, 1.0}, {2.0, -1.0});
  CHECK(f.cells() == 2);
  CHECK(f(0.0) == 2.0);
  CHECK(f(0.25) == -1.0);  // right-continuous at breakpoints
  CHECK(f(0.999) == -1.0);
  CHECK(f(1.5) == 0.0);  // zero beyond the horizon
  CHECK(f.integral() == doctest::Approx(2.0 * 0.25 - 0.75).epsilon(1e-15));

  const StepFunction a = f.abs();
  CHECK(a(0.5) == 1.0);
  CHECK(a(0.1) == 2.0);
}

TEST_CASE("step function validation") {
  CHECK_THROWS_AS(StepFunction(Domain::unit(), {0.0, 0.5}, {1.0, 2.0}), ParseError);
  CHECK_THROWS_AS(StepFunction(Domain::unit(), {0.0, 0.6, 0.5, 1.0}, {1.0, 2.0, 3.0}),
                  ParseError);
  CHECK_THROWS_AS(StepFunction(Domain::unit(), {0.1, 1.0}, {1.0}), ParseError);
  CHECK_THROWS_AS(StepFunction(Domain::unit(), {0.0, 0.5}, {1.0}), ParseError);  // horizon
}

TEST_CASE("indicator and partial integral") {
  const StepFunction f = StepFunction::indicator(Domain::half_line(2.0), 0.5, 1.5, 3.0);
  const PiecewiseLinear F = f.partial_integral();
  CHECK(F(0.5) == 0.0);
  CHECK(F(1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(F(1.5) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(F(10.0) == doctest::Approx(3.0).epsilon(1e-15));  // flat continuation
  CHECK(F.back() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("breakpoint merging dedupes and keeps horizon") {
  const std::vector<double> a{0.0, 0.5, 1.0};
  const std::vector<double> b{0.0, 0.5 + 1e-16, 0.75, 1.0};
  const auto m = merge_breakpoints({&a, &b}, 1.0);
  CHECK(m.front() == 0.0);
  CHECK(m.back() == 1.0);
  for (std::size_t i = 0; i + 1 < m.size(); ++i) CHECK(m[i] < m[i + 1]);
  // the two nearly identical points collapse
  CHECK(m.size() == 4);
}

TEST_CASE("step json round trip") {
  const StepFunction f(Domain::half_line(3.0), {0.0, 1.0, 3.0}, {0.125, -2.5});
  const StepFunction g = StepFunction::from_json(f.to_json());
  CHECK(g.domain() == f.domain());
  REQUIRE(g.cells() == f.cells());
  for (std::size_t i = 0; i < f.cells(); ++i) {
    CHECK(g.values()[i] == f.values()[i]);
    CHECK(g.breakpoints()[i] == f.breakpoints()[i]);
  }
  CHECK_THROWS_AS(StepFunction::from_json("{"), ParseError);
  CHECK_THROWS_AS(StepFunction::from_json(R"({"domain":{"kind":"nowhere","horizon":1}})"),
                  ParseError);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 123456789.123456789}) {
    CHECK(parse_number(format_number(v)) == v);
  }
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK_THROWS_AS(parse_number("12,5"), ParseError);
}

TEST_CASE("sequence basics") {
  Sequence s(std::vector<double>{3.0, 0.0, 2.0});
  CHECK(s.support() == 3);
  CHECK(s.at1(1) == 3.0);
  CHECK(s.at1(3) == 2.0);
  CHECK(s.at1(4) == 0.0);  // finitely supported extension
  CHECK(Sequence().is_zero());
}

TEST_CASE("sequence weight") {
  SeqWeight w{-0.5, {2.0, 1.0}};
  CHECK(w.at(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w.at(2) == doctest::Approx(1.0 * std::pow(2.0, -0.5)).epsilon(1e-15));
  // explicit entries extend by their last value
  CHECK(w.at(5) == doctest::Approx(1.0 * std::pow(5.0, -0.5)).epsilon(1e-15));
  CHECK(SeqWeight{}.is_one());
  CHECK_FALSE(w.is_pure_power());
}

TEST_CASE("concave gauge validation and evaluation") {
  CHECK_THROWS_AS(ConcaveGauge({0.5, 1.0}, {0.1, 1.0}, 0.0), ParseError);  // must start at 0
  CHECK_THROWS_AS(ConcaveGauge({0.0, 1.0, 2.0}, {0.0, 1.0, 3.0}, 0.0),
                  ParseError);  // increasing slopes are not concave
  const ConcaveGauge phi = ConcaveGauge::single_knot(1.0, 1.0);
  CHECK(phi(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi(4.0) == doctest::Approx(1.0).epsilon(1e-15));  // flat after the knot
  const ConcaveGauge lin({0.0, 1.0}, {0.0, 2.0}, 2.0);
  CHECK(lin(3.0) == doctest::Approx(6.0).epsilon(1e-15));  // final slope continues
}

TEST_CASE("space parse and format round trip") {
  for (const char* text : {
           "Lp 2 one unit",
           "Ces(Lp 2 (pow -0.25) halfline)",
           "Tilde(Lp 1 inv1mx unit)",
           "SeqCes(SeqLp 2 (npow -0.25))",
           "Wtd(Lp 2 one unit inv1mx)",
           "Wtd(Lp 2 one unit (pow 2))",
           "Lp inf onemx unit",
           "Lorentz (gauge 0 0 1 1)",
           "Mar (gauge 0 0 1 1)",
           "MarStar (gauge 0 0 2 1 slope 0.25)",
           "Lp 1 (phiovert (gauge 0 0 1 1)) unit",
           "Lp 2 (prod (pow 1) inv1mx) unit",
           "Lp 2 (recip (prod (pow 1) onemx)) unit",
           "Lp 1 (expl halfline 4 (0 1 4) (2 0.5)) halfline",
       }) {
    const SpacePtr s = parse_space(text);
    const SpacePtr again = parse_space(s->format());
    CHECK(again->format() == s->format());
  }
  // head-call and bare forms are interchangeable when the paren is detached
  CHECK(parse_space("Ces (Lp 2 one halfline)")->format() ==
        parse_space("Ces(Lp 2 one halfline)")->format());
  CHECK(parse_space("Lp 2 one unit")->domain() == Domain::unit());
  CHECK(parse_space("Ces(Lp 2 one halfline)")->domain().kind == DomainKind::HalfLine);
}

TEST_CASE("space parse rejects malformed specs") {
  CHECK_THROWS_AS(parse_space(""), ParseError);
  CHECK_THROWS_AS(parse_space("Lq 2 one unit"), ParseError);
  CHECK_THROWS_AS(parse_space("Lp 2 one nowhere"), ParseError);
  CHECK_THROWS_AS(parse_space("Lp 2 one unit extra"), ParseError);
  CHECK_THROWS_AS(parse_space("Ces(Lp 2 one unit"), ParseError);  // missing paren
  CHECK_THROWS_AS(parse_space("Lp 0.5 one unit"), ParseError);    // p < 1
  CHECK_THROWS_AS(parse_weight("(pow )"), ParseError);
}

TEST_CASE("weight evaluation nodes") {
  CHECK((*parse_weight("(pow 2)"))(3.0) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK((*parse_weight("inv1mx"))(0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((*parse_weight("onemx"))(0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK((*parse_weight("maxinv1"))(0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((*parse_weight("maxinv1"))(0.9) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK((*parse_weight("maxinv1"))(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((*parse_weight("(prod (pow 1) (pow 1))"))(3.0) ==
        doctest::Approx(9.0).epsilon(1e-15));
  CHECK((*parse_weight("(recip (pow 1))"))(4.0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("nontriviality of averaged spaces") {
  // Half-line CLp is nontrivial for p > 1
  const auto r1 = nontriviality(*parse_space("Ces(Lp 2 one halfline)"));
  CHECK(r1.verdict == Triviality::NonTrivial);
  // Ces(L1) on the half line is trivial: 1/x is never integrable at infinity
  const auto r2 = nontriviality(*parse_space("Ces(Lp 1 one halfline)"));
  CHECK(r2.verdict == Triviality::Trivial);
  // Sequence analogue: Ces(l1) trivial, Ces(l2) nontrivial
  CHECK(nontriviality(*parse_space("SeqCes(SeqLp 1 one)")).verdict == Triviality::Trivial);
  CHECK(nontriviality(*parse_space("SeqCes(SeqLp 2 one)")).verdict ==
        Triviality::NonTrivial);
}
