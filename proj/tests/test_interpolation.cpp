#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ceslab/core.hpp"
#include "ceslab/interpolation.hpp"
#include "ceslab/sampling.hpp"

using namespace ceslab;
using namespace ceslab::interp;

namespace {
const Domain kHl2 = Domain::half_line(2.0);
const StepFunction kF(kHl2, {0.0, 1.0, 2.0}, {2.0, 1.0});
}  // namespace

TEST_CASE("k functional of a two-step function") {
  // f* = 2 on [0,1), 1 on [1,2): K(1.5) = 2 + 0.5, saturation at ||f||_1 = 3
  CHECK(k_functional(kF, 1.5) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(k_functional(kF, 10.0) == doctest::Approx(3.0).epsilon(1e-14));
  const KProfile prof(kF);
  CHECK(prof(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(prof.saturation() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(prof(0.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("k profile is concave") {
  sampling::Rng rng(77);
  for (int k = 0; k < 10; ++k) {
    const StepFunction f = sampling::random_step(rng, Domain::half_line(3.0), 10, 3.0,
                                                 sampling::family_for(k));
    const KProfile prof(f);
    for (double t1 = 0.1; t1 < 3.0; t1 += 0.4) {
      for (double t3 = t1 + 0.2; t3 < 3.6; t3 += 0.4) {
        const double t2 = 0.5 * (t1 + t3);
        CHECK(prof(t2) + 1e-11 >= 0.5 * (prof(t1) + prof(t3)));
      }
    }
  }
}

TEST_CASE("weighted k decomposition: constant weight scales") {
  // w = 2: K(t, f; L1(w), Linf(w)) = K(t, 2f) = 2K(t, f)
  const auto w2 = Weight::make(Weight::Explicit{StepFunction(kHl2, {0.0, 2.0}, {2.0})});
  const KDecomposition d = k_functional_weighted(kF, 1.5, w2);
  CHECK(d.value == doctest::Approx(5.0).epsilon(1e-13));
  // witness really decomposes f and attains the value
  REQUIRE(d.g.cells() == d.h.cells());
  CHECK(d.g.values()[0] + d.h.values()[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.g.values()[1] + d.h.values()[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.norm_g + 1.5 * d.norm_h == doctest::Approx(d.value).epsilon(1e-13));
  CHECK(d.lambda >= 0.0);
  const std::string js = kdecomp_json(d);
  CHECK(js.find("\"lambda\"") != std::string::npos);
}

TEST_CASE("weighted k functional saturates at the weighted L1 norm") {
  // w = x, f = chi[0,1): for large t the value is ∫ x dx = 1/2
  const StepFunction chi = StepFunction::indicator(Domain::half_line(1.0), 0.0, 1.0);
  const KDecomposition d = k_functional_weighted(chi, 100.0, Weight::power(1.0));
  CHECK(d.value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(check_k_identity(chi, 100.0, Weight::power(1.0)).pass);
}

TEST_CASE("weighted identity holds on random samples") {
  for (int k = 0; k < 100; ++k) {
    sampling::Rng rng(sampling::mix_seed(7, static_cast<std::uint64_t>(k)));
    const StepFunction g =
        sampling::random_step(rng, Domain::unit(), 12, 1.0, sampling::family_for(k));
    const double t = rng.log_uniform(0.01, 10.0);
    const double alpha = rng.uniform(-0.5, 1.5);
    const auto c = check_k_identity(g, t, Weight::power(alpha));
    CAPTURE(k);
    CHECK(c.pass);
  }
}

TEST_CASE("substitution operator obeys the interpolated bound") {
  const auto c2 = check_weighted_interp_bound(
      *SpaceSpec::lp(2.0, Weight::one(), Domain::unit()),
      Weight::make(Weight::OneMinusXInv{}), 30, 5);
  CHECK(c2.pass);
  CHECK(c2.lhs <= std::exp(1.0) * (1.0 + 1e-9));
  const auto c3 = check_weighted_interp_bound(
      *SpaceSpec::lp(3.0, Weight::one(), Domain::unit()),
      Weight::make(Weight::OneMinusXInv{}), 30, 6);
  CHECK(c3.pass);
  // non-Lp specs are rejected, not guessed
  CHECK_THROWS_AS(check_weighted_interp_bound(
                      *parse_space("Lorentz (gauge 0 0 1 1)"),
                      Weight::make(Weight::OneMinusXInv{}), 4, 1),
                  Unsupported);
}
