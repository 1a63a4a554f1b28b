#include "solvcert/threebus.hpp"

#include <cmath>
#include <sstream>

namespace solvcert::threebus {

Network Model::network() const { return Network(2, {{0, 1, y}, {1, 2, {1.0, 0.0}}}); }

AnalyticBounds analytic_bounds(const Model& m) {
  if (!(m.y.real() > 0.0)) throw InputError("3-bus bounds need Re(y) > 0");
  const double y2 = std::norm(m.y);
  AnalyticBounds out;
  out.p_min = -y2 / (4.0 * m.y.real());
  if (m.y.imag() != 0.0) {
    out.p_max = m.y.real() * y2 / (4.0 * m.y.imag() * m.y.imag());
    out.edge_level_magnitude = y2 / (4.0 * std::abs(m.y.imag()));
  }
  return out;
}

namespace {

void require_edge(const Model& m) {
  if (m.y.imag() == 0.0) throw HypothesisError("the chain has no flat edge when Im(y) = 0");
}

}  // namespace

double edge_imag_total(const Model& m) {
  require_edge(m);
  return std::norm(m.y) / (4.0 * m.y.imag());
}

Direction witness_direction(const Model& m) {
  require_edge(m);
  const double sign = m.y.imag() > 0.0 ? -1.0 : 1.0;
  return Direction{CVector::Constant(2, sign * kJ / std::sqrt(2.0))};
}

CVector edge_base(const Model& m) {
  require_edge(m);
  CVector v(2);
  v << -kJ * m.y / (2.0 * m.y.imag()), 0.0;
  return v;
}

CVector edge_null() {
  CVector v(2);
  v << 0.0, 1.0;
  return v;
}

PowerInjection edge_curve(const Model& m, Complex z) {
  return power_flow(m.network(), {edge_base(m) + z * edge_null()});
}

Complex edge_argmin(const Model& m) {
  require_edge(m);
  return -kJ * m.y / (2.0 * m.y.imag());
}

namespace {

bool close(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

CrossValidation cross_validate(const Model& m, std::uint64_t seed, std::size_t samples, double rel_tol,
                               kernels::Exec exec) {
  CrossValidation out;
  out.model = m;
  out.analytic = analytic_bounds(m);
  const Network net = m.network();
  out.network_class = classify(net);
  out.verdicts = theorem_verdicts(net);

  ProbeOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.exec = exec;
  out.probe = probe_sufficient_condition(net, opts);
  out.computed = subset_bounds(net, out.probe);

  auto fail = [&](const std::string& what) { out.diagnostics.push_back(what); };
  std::ostringstream msg;
  msg.precision(17);

  if (!close(out.computed.p_min, out.analytic.p_min, rel_tol)) {
    msg << "p_min: computed " << out.computed.p_min << ", analytic " << out.analytic.p_min;
    fail(msg.str());
    msg.str("");
  }
  if (out.analytic.p_max.has_value() != out.computed.p_max.has_value()) {
    fail(std::string("p_max: analytic is ") + (out.analytic.p_max ? "finite" : "unbounded") +
         ", computed is " + (out.computed.p_max ? "finite" : "unbounded"));
  } else if (out.analytic.p_max && !close(*out.computed.p_max, *out.analytic.p_max, rel_tol)) {
    msg << "p_max: computed " << *out.computed.p_max << ", analytic " << *out.analytic.p_max;
    fail(msg.str());
    msg.str("");
  }

  if (m.y.imag() != 0.0) {
    const Direction expected = witness_direction(m);
    if (out.probe.candidates.empty()) {
      fail("no flat-edge candidate found");
    } else {
      const FlatEdgeWitness& w = out.probe.candidates.front();
      const Direction axis{CVector::Constant(2, kJ / std::sqrt(2.0))};
      out.direction_alignment = std::abs(axis.coeffs.dot(w.c.coeffs)) / w.c.norm();
      if (out.direction_alignment < 1.0 - rel_tol) {
        msg << "candidate direction not parallel to j(1,1): alignment " << out.direction_alignment;
        fail(msg.str());
        msg.str("");
      }
      if ((w.c.coeffs - expected.coeffs).norm() > 1e-6)
        fail("candidate has the wrong overall sign for a PSD H_c");
      // only one sign of the ray keeps H_c PSD
      const HermitianSpectrum flipped = hermitian_spectrum(build_certificates(net, (-1.0) * w.c).h);
      if (is_psd(flipped, opts.psd_tol)) fail("both signs of the candidate give PSD H_c");
      out.computed_edge_level = w.hyperplane_level;
      // c . p = sum Re(conj(C_i) S_i) = -sgn(Im y) Im(S_1 + S_2) / sqrt 2
      out.analytic_edge_level = expected.coeffs(0).imag() * edge_imag_total(m);
      if (!close(*out.computed_edge_level, *out.analytic_edge_level, rel_tol)) {
        msg << "edge level: computed " << *out.computed_edge_level << ", analytic " << *out.analytic_edge_level;
        fail(msg.str());
        msg.str("");
      }
    }
    if (out.probe.candidates.size() > 1) fail("more than one distinct candidate direction");
  } else if (!out.probe.candidates.empty()) {
    fail("candidate found although Im(y) = 0");
  }
  out.agree = out.diagnostics.empty();
  return out;
}

}  // namespace solvcert::threebus
