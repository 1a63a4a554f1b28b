#include <cmath>

#include "doctest.h"
#include "solvcert/threebus.hpp"
#include "support.hpp"

using namespace solvcert;
using namespace testing_support;

TEST_CASE("closed forms at y = 1 + j") {
  const threebus::Model m{{1.0, 1.0}};
  const threebus::AnalyticBounds b = threebus::analytic_bounds(m);
  CHECK(b.p_min == doctest::Approx(-0.5));
  REQUIRE(b.p_max);
  CHECK(*b.p_max == doctest::Approx(0.5));
  CHECK(*b.edge_level_magnitude == doctest::Approx(0.5));
  CHECK_THROWS_AS(threebus::analytic_bounds({{0.0, 1.0}}), InputError);
  CHECK_FALSE(threebus::analytic_bounds({{1.0, 0.0}}).p_max);
  CHECK_THROWS_AS(threebus::edge_curve({{1.0, 0.0}}, 0.0), HypothesisError);
}

TEST_CASE("edge family: constant Im total, Re total quadratic around z_min") {
  std::mt19937_64 rng(3);
  for (const Complex y : {Complex{1.0, 1.0}, Complex{0.5, -2.0}, Complex{2.0, 0.3}}) {
    const threebus::Model m{y};
    const double p_max = *threebus::analytic_bounds(m).p_max;
    const Complex zmin = threebus::edge_argmin(m);
    for (int k = 0; k < 50; ++k) {
      const Complex z{uniform(rng, -3, 3), uniform(rng, -3, 3)};
      const CVector s = threebus::edge_curve(m, z).s;
      CHECK(s.imag().sum() == doctest::Approx(std::norm(y) / (4.0 * y.imag())).epsilon(1e-12));
      CHECK(s.real().sum() - p_max == doctest::Approx(std::norm(z - zmin)).epsilon(1e-10));
    }
  }
}

TEST_CASE("witness direction keeps H_c PSD and singular") {
  for (const Complex y : {Complex{1.0, 1.0}, Complex{1.0, -1.0}}) {
    const threebus::Model m{y};
    const HermitianSpectrum s = hermitian_spectrum(build_certificates(m.network(), threebus::witness_direction(m)).h);
    CHECK(s.min() == doctest::Approx(0.0));
    CHECK(s.max() > 0.0);
  }
}

TEST_CASE("cross validation agrees") {
  for (const Complex y : {Complex{1.0, 1.0}, Complex{1.0, 0.1}, Complex{2.0, -0.5}, Complex{1.0, 0.0}}) {
    const auto cv = threebus::cross_validate({y}, 1, 200);
    CHECK_MESSAGE(cv.agree, "y = ", y.real(), "+", y.imag(), "j");
    for (const auto& d : cv.diagnostics) MESSAGE(d);
  }
  CHECK(threebus::Model{{1.0, 1.0}}.network().n() == 2);
}

TEST_CASE("p_max grows as Im y shrinks") {
  double previous = 0.0;
  for (double im : {1.0, 0.5, 0.1}) {
    const double p = *threebus::analytic_bounds({{1.0, im}}).p_max;
    CHECK(p > previous);
    previous = p;
  }
}
