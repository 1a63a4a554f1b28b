#include <cmath>

#include "doctest.h"
#include "solvcert/certificates.hpp"
#include "support.hpp"

using namespace solvcert;
using namespace testing_support;

namespace {

const Network kThreeBus(2, {{0, 1, {1.0, 1.0}}, {1, 2, {1.0, 0.0}}});

}  // namespace

TEST_CASE("spectrum helpers") {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = 1e-14;
  const HermitianSpectrum s = hermitian_spectrum(a);
  CHECK(s.norm() == doctest::Approx(2.0));
  CHECK(is_psd(s, 1e-9));
  CHECK_FALSE(is_positive_definite(s, 1e-9));
  CHECK(count_near_zero(s, 1e-8) == 2);
  CHECK(null_basis(s, 1e-8).cols() == 2);
  a(2, 2) = -1e-3;
  CHECK_FALSE(is_psd(hermitian_spectrum(a), 1e-9));
  CHECK(is_psd(hermitian_spectrum(CMatrix::Constant(2, 2, 1e-20)), 1e-9, 1e-12));
}

TEST_CASE("zero multiplicity") {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  CHECK(zero_multiplicity(a) == 2);
  a(1, 1) = 3.0;
  CHECK(zero_multiplicity(a) == 1);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(zero_multiplicity(a), HypothesisError);
}

TEST_CASE("lemma 1 branches") {
  const Network tri(2, {{0, 1, {1.0, 0.0}}, {1, 2, {2.0, 0.0}}, {0, 2, {0.5, 0.0}}});
  const LemmaVerdict plus = check_lemma1(tri, cplus_direction(2));
  CHECK(plus.holds);
  CHECK(plus.branch == LemmaBranch::AllPositive);
  const LemmaVerdict imag = check_lemma1(tri, {CVector::Constant(2, Complex{0.0, -0.7})});
  CHECK(imag.holds);
  CHECK(imag.branch == LemmaBranch::UniformImaginary);
  CHECK(imag.alpha == doctest::Approx(-0.7));
  CVector mixed(2);
  mixed << 1.0, -1.0;
  CHECK(check_lemma1(tri, {mixed}).branch == LemmaBranch::NotApplicable);
  CHECK_THROWS_AS(check_lemma1(kThreeBus, cplus_direction(2)), HypothesisError);
}

TEST_CASE("lemma 1 on a star is checked per slack component") {
  const Network star(2, {{0, 1, {1.0, 0.0}}, {0, 2, {2.0, 0.0}}});
  CVector c(2);
  c << 1.0, 0.0;
  const LemmaVerdict v = check_lemma1(star, {c});
  CHECK(v.holds);
  CHECK(v.branch == LemmaBranch::Blockwise);
}

TEST_CASE("lemma 2 needs real directions") {
  CHECK(check_lemma2(kThreeBus, cplus_direction(2)).branch == LemmaBranch::AllPositive);
  CHECK_THROWS_AS(check_lemma2(kThreeBus, {CVector::Constant(2, kJ)}), InputError);
}

TEST_CASE("cone samples are PSD and unit norm") {
  std::mt19937_64 rng(4);
  const Network net = random_lossy_mesh(4, 2, rng);
  for (bool real_only : {false, true}) {
    const auto samples = sample_psd_cone(net, real_only, 200, 3);
    REQUIRE(samples.size() == 200);
    int boundary = 0;
    for (const ConeSample& s : samples) {
      CHECK(s.c.norm() == doctest::Approx(1.0));
      CHECK(is_psd(hermitian_spectrum(build_certificates(net, s.c).h), 1e-9));
      if (real_only) CHECK(s.c.is_real());
      boundary += s.boundary;
    }
    CHECK(boundary > 50);
  }
  CHECK(sample_psd_cone(net, false, 50, 3, kernels::Exec::Serial).back().c.coeffs ==
        sample_psd_cone(net, false, 50, 3, kernels::Exec::Parallel).back().c.coeffs);
}

TEST_CASE("flat edge of the 3-bus chain along j(1,1)") {
  const Direction c{CVector::Constant(2, Complex{0.0, -1.0 / std::sqrt(2.0)})};
  const auto w = find_flat_edge(kThreeBus, c);
  REQUIRE(w);
  const CertificateMatrices m = build_certificates(kThreeBus, c);
  CHECK((m.h * w->v_null).norm() < 1e-12);
  CHECK(std::abs(m.j.dot(w->v_null)) < 1e-12);
  CHECK((m.h * w->v_b.v - m.j).norm() < 1e-12);
  CHECK(w->hyperplane_level == doctest::Approx(-0.5 / std::sqrt(2.0)));
  CHECK_FALSE(find_flat_edge(kThreeBus, cplus_direction(2)));
  CHECK_THROWS_AS(find_flat_edge(kThreeBus, (-1.0) * c), HypothesisError);
}

TEST_CASE("probe finds the 3-bus witness and nothing on a homogeneous tree") {
  ProbeOptions opts;
  opts.samples = 200;
  const ProbeReport r = probe_sufficient_condition(kThreeBus, opts);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.max_multiplicity >= 2);
  const CVector axis = CVector::Constant(2, kJ / std::sqrt(2.0));
  CHECK(std::abs(axis.dot(r.candidates[0].c.coeffs)) == doctest::Approx(1.0));

  const Network tree(3, {{0, 1, {1.0, 2.0}}, {1, 2, {0.5, 1.0}}, {1, 3, {2.0, 4.0}}});
  const ProbeReport t = probe_sufficient_condition(tree, opts);
  CHECK(t.candidates.empty());
  CHECK(t.max_multiplicity <= 1);
  CHECK(t.samples == 200);
}

TEST_CASE("probe is independent of the execution mode") {
  ProbeOptions opts;
  opts.samples = 60;
  const ProbeReport a = probe_sufficient_condition(kThreeBus, opts);
  opts.exec = kernels::Exec::Serial;
  const ProbeReport b = probe_sufficient_condition(kThreeBus, opts);
  CHECK(a.multiplicity_histogram == b.multiplicity_histogram);
  REQUIRE(a.candidates.size() == b.candidates.size());
  CHECK(a.candidates[0].c.coeffs == b.candidates[0].c.coeffs);
}

TEST_CASE("theorem verdicts") {
  auto find = [](const std::vector<TheoremVerdict>& vs, Theorem t) {
    for (const auto& v : vs)
      if (v.theorem == t) return v;
    FAIL("missing verdict");
    return vs.front();
  };
  SUBCASE("inhomogeneous chain: T2 only") {
    const auto vs = theorem_verdicts(kThreeBus);
    CHECK_FALSE(find(vs, Theorem::HomogeneousTreeFullSet).applicable);
    CHECK_FALSE(find(vs, Theorem::HomogeneousTreeFullSet).reasons.empty());
    CHECK(find(vs, Theorem::TreeRealSet).applicable);
    CHECK(find(vs, Theorem::TreeRealSet).claimed_set == SolvabilitySet::Real);
    CHECK_FALSE(find(vs, Theorem::ResistiveRealSet).applicable);
  }
  SUBCASE("homogeneous tree: T1 and T2") {
    const auto vs = theorem_verdicts(Network(2, {{0, 1, {1.0, 1.0}}, {1, 2, {2.0, 2.0}}}));
    CHECK(find(vs, Theorem::HomogeneousTreeFullSet).applicable);
    CHECK(find(vs, Theorem::HomogeneousTreeFullSet).claimed_set == SolvabilitySet::Full);
    CHECK(find(vs, Theorem::TreeRealSet).applicable);
  }
  SUBCASE("resistive mesh: T3 only") {
    const auto vs = theorem_verdicts(Network(2, {{0, 1, {1.0, 0.0}}, {1, 2, {2.0, 0.0}}, {0, 2, {1.0, 0.0}}}));
    CHECK_FALSE(find(vs, Theorem::TreeRealSet).applicable);
    CHECK(find(vs, Theorem::ResistiveRealSet).applicable);
  }
  SUBCASE("regularized lossless mesh keeps T3 across an epsilon ladder") {
    const Network lossless(2, {{0, 1, {0.0, 1.0}}, {1, 2, {0.0, 2.0}}, {0, 2, {0.0, 1.0}}});
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const Network reg = epsilon_regularize(lossless, eps);
      CHECK(reg.admittance(0, 1).real() == eps);
      CHECK(classify(reg).all_resistive_lines);
      CHECK_FALSE(find(theorem_verdicts(reg), Theorem::TreeRealSet).applicable);
    }
    CHECK_THROWS_AS(epsilon_regularize(lossless, 0.0), InputError);
  }
}

TEST_CASE("phase alignment") {
  CVector v(3);
  v << Complex{1.0, 1.0}, Complex{2.0, 2.0}, 0.0;
  CHECK(check_phase_alignment(v));
  v(2) = Complex{-1.0, -1.0};
  CHECK_FALSE(check_phase_alignment(v));
  v << Complex{0.0, 1.0}, Complex{0.0, 2.0}, Complex{0.1, 3.0};
  CHECK_FALSE(check_phase_alignment(v));
}

TEST_CASE("names") {
  CHECK(to_string(Theorem::HomogeneousTreeFullSet) == "T1_full_set_homogeneous_tree");
  CHECK(to_string(SolvabilitySet::Real) == "real");
  CHECK(to_string(LemmaBranch::Blockwise) == "blockwise");
}
