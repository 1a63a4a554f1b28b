#include <cmath>
#include <numbers>

#include "doctest.h"
#include "solvcert/network.hpp"
#include "support.hpp"

using namespace solvcert;
using namespace testing_support;

TEST_CASE("admittance matrix of a single line") {
  const Network net(1, {{0, 1, {1.0, 0.0}}});
  const CMatrix y = build_admittance_matrix(net);
  CHECK(y(0, 0) == Complex{1.0, 0.0});
  CHECK(y(0, 1) == Complex{-1.0, 0.0});
  CHECK(y(1, 0) == Complex{-1.0, 0.0});
  CHECK(y(1, 1) == Complex{1.0, 0.0});
}

TEST_CASE("admittance matrix of the 3-bus chain") {
  const Complex yl{0.7, -1.3};
  const Network net(2, {{0, 1, yl}, {1, 2, {1.0, 0.0}}});
  const CMatrix y = build_admittance_matrix(net);
  CMatrix expected(3, 3);
  expected << yl, -yl, 0.0, -yl, yl + 1.0, -1.0, 0.0, -1.0, 1.0;
  CHECK((y - expected).norm() == doctest::Approx(0.0));
}

TEST_CASE("admittance matrix: symmetric with zero row sums") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Network net = random_lossy_mesh(2 + trial % 6, trial % 4, rng);
    const CMatrix y = build_admittance_matrix(net);
    CHECK((y - y.transpose()).norm() == 0.0);
    CHECK(y.rowwise().sum().norm() < 1e-12);
  }
}

TEST_CASE("constructor canonicalizes and rejects bad lines") {
  const Network net(2, {{2, 1, {1.0, 0.0}}, {1, 0, {2.0, 0.0}}});
  REQUIRE(net.line_count() == 2);
  CHECK(net.lines()[0].from == 0);
  CHECK(net.lines()[0].to == 1);
  CHECK(net.lines()[1].from == 1);
  CHECK(net.lines()[1].to == 2);
  CHECK_THROWS_AS(Network(1, {{1, 1, {1.0, 0.0}}}), InputError);
  CHECK_THROWS_AS(Network(1, {{0, 1, {0.0, 0.0}}}), InputError);
  CHECK_THROWS_AS(Network(1, {{0, 2, {1.0, 0.0}}}), InputError);
  CHECK_THROWS_AS(Network(1, {{0, 1, {1.0, 0.0}}, {1, 0, {1.0, 0.0}}}), InputError);
  CHECK_THROWS_AS(Network(0, {}), InputError);
}

TEST_CASE("classify examples") {
  SUBCASE("homogeneous chain") {
    const NetworkClass c = classify(Network(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 1.0}}}));
    CHECK(c.connected);
    CHECK(c.acyclic);
    CHECK(c.homogeneous);
    REQUIRE(c.homogeneity_angle);
    CHECK(*c.homogeneity_angle == doctest::Approx(std::numbers::pi / 4));
    CHECK_FALSE(c.purely_resistive);
  }
  SUBCASE("inhomogeneous chain") {
    const NetworkClass c = classify(Network(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 0.0}}}));
    CHECK_FALSE(c.homogeneous);
    CHECK_FALSE(c.homogeneity_angle);
    CHECK(c.all_resistive_lines);
  }
  SUBCASE("resistive triangle") {
    const NetworkClass c = classify(Network(2, {{0, 1, {1.0, 0.0}}, {1, 2, {2.0, 0.0}}, {0, 2, {3.0, 0.0}}}));
    CHECK(c.connected);
    CHECK_FALSE(c.acyclic);
    CHECK(c.purely_resistive);
    CHECK(*c.homogeneity_angle == 0.0);
  }
  SUBCASE("disconnected") {
    const NetworkClass c = classify(Network(3, {{0, 1, {1.0, 0.0}}, {2, 3, {1.0, 0.0}}}));
    CHECK_FALSE(c.connected);
    CHECK_FALSE(c.acyclic);
  }
  SUBCASE("angles compared modulo 2 pi") {
    const NetworkClass c = classify(Network(2, {{0, 1, std::polar(1.0, std::numbers::pi)}, {1, 2, std::polar(2.0, -std::numbers::pi)}}));
    CHECK(c.homogeneous);
  }
  SUBCASE("empty network rejected") { CHECK_THROWS_AS(classify(Network(1, {})), InputError); }
}

TEST_CASE("acyclic flag agrees with union-find on 1000 random graphs") {
  std::mt19937_64 rng(5);
  int trees = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const Network net = random_mesh(n, static_cast<int>(rng() % 3), rng, [&] { return Complex{1.0, 0.5}; });
    std::vector<std::pair<int, int>> edges;
    for (const Line& l : net.lines()) edges.emplace_back(l.from, l.to);
    const NetworkClass c = classify(net);
    CHECK(c.acyclic == !has_cycle(n, edges));
    trees += c.acyclic;
  }
  CHECK(trees > 100);
  CHECK(trees < 900);
}

TEST_CASE("gauge transform") {
  SUBCASE("1+j lines") {
    const GaugeResult g = gauge_transform(Network(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 1.0}}}));
    CHECK(g.angle == doctest::Approx(std::numbers::pi / 4));
    for (const Line& l : g.network.lines()) {
      CHECK(l.admittance.real() == doctest::Approx(std::sqrt(2.0)));
      CHECK(std::abs(l.admittance.imag()) < 1e-15);
    }
  }
  SUBCASE("resistive is the identity") {
    const Network net(2, {{0, 1, {1.0, 0.0}}, {1, 2, {3.0, 0.0}}});
    const GaugeResult g = gauge_transform(net);
    CHECK(g.angle == 0.0);
    for (std::size_t k = 0; k < net.line_count(); ++k) CHECK(g.network.lines()[k].admittance == net.lines()[k].admittance);
  }
  SUBCASE("inhomogeneous rejected") {
    CHECK_THROWS_AS(gauge_transform(Network(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 0.0}}})), HypothesisError);
  }
  SUBCASE("transformed network is purely resistive; powers rotate by e^{j phi}") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const double phi = uniform(rng, -1.4, 1.4);
      const Network net = random_homogeneous_tree(2 + trial % 5, phi, rng);
      const GaugeResult g = gauge_transform(net);
      CHECK(classify(g.network).purely_resistive);
      for (int k = 0; k < 5; ++k) {
        const CVector v = random_voltage(net.n(), rng, 1.0);
        const CVector s = injections_from_ybus(net, v);
        const CVector s2 = injections_from_ybus(g.network, v);
        CHECK((s2 - std::polar(1.0, phi) * s).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("slack components") {
  SUBCASE("one piece when the PQ buses stay connected") {
    const Network net(3, {{0, 1, {1.0, 0.0}}, {1, 2, {1.0, 0.0}}, {2, 3, {1.0, 0.0}}});
    CHECK(slack_components(net).size() == 1);
  }
  SUBCASE("star splits into leaves") {
    const Network net(3, {{0, 1, {1.0, 0.0}}, {0, 2, {2.0, 0.0}}, {2, 3, {3.0, 0.0}}});
    const auto parts = slack_components(net);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].buses == std::vector<BusId>{1});
    CHECK(parts[1].buses == std::vector<BusId>{2, 3});
    CHECK(parts[1].network.n() == 2);
    CHECK(parts[1].network.admittance(0, 1) == Complex{2.0, 0.0});
    CHECK(parts[1].network.admittance(1, 2) == Complex{3.0, 0.0});
  }
  SUBCASE("disconnected rejected") {
    CHECK_THROWS_AS(slack_components(Network(2, {{0, 1, {1.0, 0.0}}})), HypothesisError);
  }
}
