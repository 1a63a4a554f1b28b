#include <cmath>

#include "doctest.h"
#include "solvcert/quadratic_map.hpp"
#include "support.hpp"

using namespace solvcert;
using namespace testing_support;

namespace {

Direction random_direction(int n, std::mt19937_64& rng) {
  CVector c(n);
  for (int i = 0; i < n; ++i) c(i) = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  return {c};
}

}  // namespace

TEST_CASE("power flow examples") {
  const Network chain(2, {{0, 1, {1.0, 0.0}}, {1, 2, {1.0, 0.0}}});
  SUBCASE("flat voltages give zero injection") {
    CHECK(power_flow(chain, flat_profile(2)).s.norm() == 0.0);
  }
  SUBCASE("half voltages") {
    CVector v(2);
    v << 0.5, 0.5;
    const PowerInjection s = power_flow(chain, {v});
    CHECK(s.s(0).real() == doctest::Approx(-0.25));
    CHECK(std::abs(s.s(0).imag()) < 1e-15);
    CHECK(std::abs(s.s(1)) < 1e-15);
  }
  SUBCASE("two-bus closed form") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
      const Complex y{uniform(rng, -2, 2), uniform(rng, -2, 2)};
      const Complex v{uniform(rng, -2, 2), uniform(rng, -2, 2)};
      const PowerInjection s = power_flow(Network(1, {{0, 1, y}}), {CVector::Constant(1, v)});
      // expand v conj(y) conj(v - 1) by hand
      const double a = v.real(), b = v.imag(), g = y.real(), h = y.imag();
      const Complex expected = Complex{a, b} * Complex{g, -h} * Complex{a - 1.0, -b};
      CHECK(std::abs(s.s(0) - expected) < 1e-12);
    }
  }
  SUBCASE("agrees with the bus admittance matrix") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 200; ++k) {
      const Network net = random_lossy_mesh(1 + k % 6, k % 3, rng);
      const CVector v = random_voltage(net.n(), rng);
      CHECK((power_flow(net, {v}).s - injections_from_ybus(net, v)).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  CHECK_THROWS_AS(power_flow(chain, {CVector::Ones(3)}), InputError);
}

TEST_CASE("functional value") {
  std::mt19937_64 rng(8);
  const Network net = random_lossy_mesh(4, 2, rng);
  const CVector v = random_voltage(4, rng);
  const PowerInjection s = power_flow(net, {v});
  CHECK(functional_value(net, {v}, cplus_direction(4)) == doctest::Approx(s.s.real().sum()));
  CHECK(functional_value(net, {v}, {CVector::Constant(4, kJ)}) == doctest::Approx(s.s.imag().sum()));
}

TEST_CASE("certificate matrices") {
  SUBCASE("3-bus closed form") {
    const Complex y{0.8, 1.7};
    const Network net(2, {{0, 1, y}, {1, 2, {1.0, 0.0}}});
    CVector c(2);
    c << Complex{0.3, -0.4}, Complex{-1.1, 0.6};
    const CertificateMatrices m = build_certificates(net, {c}, 0.7);
    CMatrix h(2, 2);
    h << (c(0) * y + c(0)).real(), -(c(0) + std::conj(c(1))) / 2.0, -(std::conj(c(0)) + c(1)) / 2.0, c(1).real();
    CHECK((m.h - h).norm() < 1e-15);
    CHECK(std::abs(m.j(0) - c(0) * y / 2.0) < 1e-15);
    CHECK(m.j(1) == Complex{});
    CHECK(m.a_matrix(0, 0).real() == 0.7);
    CHECK((m.a_matrix.block(1, 1, 2, 2) - m.h).norm() == 0.0);
    CHECK((m.a_matrix.block(1, 0, 2, 1) + m.j).norm() == 0.0);
    CHECK((m.a_matrix.block(0, 1, 1, 2) + m.j.adjoint()).norm() == 0.0);
  }
  SUBCASE("zero direction gives zero matrices") {
    const Network net(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 0.0}}});
    const CertificateMatrices m = build_certificates(net, {CVector::Zero(2)});
    CHECK(m.h.norm() == 0.0);
    CHECK(m.j.norm() == 0.0);
  }
  SUBCASE("identity, linearity, hermiticity") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 300; ++k) {
      const Network net = random_lossy_mesh(1 + k % 6, k % 3, rng);
      const int n = net.n();
      const Direction c1 = random_direction(n, rng), c2 = random_direction(n, rng);
      const CertificateMatrices m1 = build_certificates(net, c1), m2 = build_certificates(net, c2);
      CHECK(hermitian_defect(m1.h) == 0.0);
      const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
      const CertificateMatrices mix = build_certificates(net, a * c1 + b * c2);
      CHECK((mix.h - (a * m1.h + b * m2.h)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((mix.j - (a * m1.j + b * m2.j)).cwiseAbs().maxCoeff() < 1e-12);
      const CVector v = random_voltage(n, rng);
      const double value = functional_value(net, {v}, c1);
      CHECK(std::abs(value - m1.quadratic_value(v)) <= 1e-10 * (1.0 + std::abs(value)));
    }
  }
  SUBCASE("real directions on resistive nets give real H") {
    std::mt19937_64 rng(13);
    const Network net = random_resistive_mesh(5, 2, rng);
    CVector c(5);
    for (int i = 0; i < 5; ++i) c(i) = uniform(rng, -1, 1);
    CHECK(build_certificates(net, {c}).h.imag().norm() == 0.0);
  }
}

TEST_CASE("c_+ certificate") {
  CHECK(cplus_direction(2).coeffs == CVector::Ones(2));
  CHECK_THROWS_AS(cplus_direction(0), InputError);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const Network net = Network(1 + k % 6, random_tree_lines(1 + k % 6, rng, [&] {
                                  return Complex{uniform(rng, 0.1, 2.0), uniform(rng, -3.0, 3.0)};
                                }));
    CHECK(hermitian_spectrum(build_certificates(net, cplus_direction(net.n())).h).min() > 0.0);
  }
  SUBCASE("edge-sum form") {
    for (int k = 0; k < 50; ++k) {
      const Network net = random_lossy_mesh(2 + k % 5, k % 3, rng);
      const CertificateMatrices m = build_certificates(net, cplus_direction(net.n()));
      const CVector v = random_voltage(net.n(), rng);
      double edge_sum = 0.0;
      for (const Line& l : net.lines()) {
        const Complex vi = v(l.to - 1);
        const Complex vk = l.from == 0 ? Complex{} : v(l.from - 1);
        edge_sum += l.admittance.real() * std::norm(vi - vk);
      }
      CHECK(v.dot(m.h * v).real() == doctest::Approx(edge_sum).epsilon(1e-12));
    }
  }
  SUBCASE("a reactive line can break definiteness") {
    const Network net(2, {{0, 1, {0.0, -2.0}}, {1, 2, {0.0, 1.0}}});
    CHECK(hermitian_spectrum(build_certificates(net, cplus_direction(2)).h).min() <= 1e-15);
  }
}

TEST_CASE("Newton feasibility") {
  const Network chain(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 0.0}}});
  SUBCASE("zero target from flat start") {
    const NewtonResult r = newton_feasibility(chain, {CVector::Zero(2)}, flat_profile(2));
    CHECK(r.converged);
    CHECK(r.iterations <= 1);
    CHECK((r.voltage.v - CVector::Ones(2)).norm() < 1e-12);
  }
  SUBCASE("round trip near the flat start") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
      const Network net = random_lossy_mesh(1 + k % 5, k % 2, rng);
      const CVector v = CVector::Ones(net.n()) + 0.15 * random_voltage(net.n(), rng, 1.0);
      const NewtonResult r = newton_feasibility(net, power_flow(net, {v}), flat_profile(net.n()));
      CHECK(r.converged);
      CHECK(r.residual <= 1e-8);
    }
  }
  SUBCASE("below P_min is inconclusive") {
    PowerInjection target{CVector(2)};
    target.s << Complex{-0.3, 0.1}, Complex{-0.3, 0.0};
    const NewtonResult r = multistart_feasibility(chain, target, 7);
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.reason.empty());
  }
  CHECK_THROWS_AS(newton_feasibility(chain, {CVector::Zero(2)}, flat_profile(2), {0.0, 10}), InputError);
}
