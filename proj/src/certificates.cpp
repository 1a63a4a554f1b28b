#include "solvcert/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <gsl/gsl_multimin.h>

#include "solvcert/random.hpp"

namespace solvcert {

namespace {

double max_admittance(const Network& net) {
  double m = 0.0;
  for (const auto& line : net.lines()) m = std::max(m, std::abs(line.admittance));
  return m;
}

// Smallest total line conductance seen from a single bus, used to translate the
// relative PSD tolerance into a tolerance on diagonal coefficients.
double min_diagonal_weight(const Network& net) {
  double w = std::numeric_limits<double>::infinity();
  for (BusId i = 1; i <= net.n(); ++i) {
    Complex total{};
    for (const auto& [k, y] : net.neighbors(i)) total += y;
    w = std::min(w, std::abs(total.real()));
  }
  return w;
}

double floor_of(const Network& net, const Direction& c) {
  return 1e-12 * c.norm() * max_admittance(net);
}

void require_nonzero(const Direction& c, const Network& net) {
  if (c.n() != net.n()) throw InputError("direction length does not match network size");
  if (c.norm() == 0.0) throw InputError("certificate direction must be nonzero");
}

}  // namespace

namespace {

enum class LemmaKind { Complex, Real };

// Lemma verdict for a network whose PQ buses stay connected without the slack.
// H_c is known to be PSD.
LemmaVerdict lemma_piece(const Network& net, const Direction& c, const HermitianSpectrum& spec,
                         double psd_tol, LemmaKind kind) {
  LemmaVerdict out;
  out.min_eigenvalue = spec.min();
  out.min_real_coeff = c.coeffs.real().minCoeff();
  const double scale = c.norm();
  if (kind == LemmaKind::Complex) {
    const double mean_im = c.coeffs.imag().mean();
    const double re_dev = c.coeffs.real().cwiseAbs().maxCoeff();
    const double im_dev = (c.coeffs.imag().array() - mean_im).abs().maxCoeff();
    if (re_dev <= 1e-8 * scale && im_dev <= 1e-8 * scale) {
      if (spec.norm() <= 1e-8 * scale * max_admittance(net)) {
        out.branch = LemmaBranch::UniformImaginary;
        out.alpha = mean_im;
        return out;
      }
      out.holds = false;
      out.branch = LemmaBranch::Violated;
      out.witness = c;
      return out;
    }
  }
  // H_ii = Re(C_i) * sum_l Re(y_il) (real C or resistive lines), so a PSD
  // tolerance on H allows Re C_i this far below 0.
  const double slack = psd_tol * spec.norm() / min_diagonal_weight(net);
  if (out.min_real_coeff > -slack) {
    out.branch = LemmaBranch::AllPositive;
    return out;
  }
  out.holds = false;
  out.branch = LemmaBranch::Violated;
  out.witness = c;
  return out;
}

LemmaVerdict lemma_verdict(const Network& net, const Direction& c, double psd_tol, LemmaKind kind) {
  LemmaVerdict out;
  const HermitianSpectrum spec = hermitian_spectrum(build_certificates(net, c).h);
  out.min_eigenvalue = spec.min();
  out.min_real_coeff = c.coeffs.real().minCoeff();
  if (!is_psd(spec, psd_tol, floor_of(net, c))) return out;

  const std::vector<SlackComponent> pieces = slack_components(net);
  if (pieces.size() == 1) return lemma_piece(net, c, spec, psd_tol, kind);

  bool all_positive = true;
  for (const SlackComponent& piece : pieces) {
    Direction part{CVector(piece.network.n())};
    for (int i = 0; i < piece.network.n(); ++i)
      part.coeffs(i) = c.coeffs(piece.buses[static_cast<std::size_t>(i)] - 1);
    if (part.norm() <= 1e-12 * c.norm()) {
      all_positive = false;
      continue;
    }
    const HermitianSpectrum piece_spec = hermitian_spectrum(build_certificates(piece.network, part).h);
    // tolerance relative to the whole matrix, as the PSD test above
    const double tol = psd_tol * spec.norm() / std::max(piece_spec.norm(), 1e-300);
    const LemmaVerdict v = lemma_piece(piece.network, part, piece_spec, tol, kind);
    if (v.branch == LemmaBranch::Violated) {
      out.holds = false;
      out.branch = LemmaBranch::Violated;
      out.witness = c;
      return out;
    }
    if (v.branch != LemmaBranch::AllPositive) all_positive = false;
  }
  out.branch = all_positive ? LemmaBranch::AllPositive : LemmaBranch::Blockwise;
  return out;
}

}  // namespace

LemmaVerdict check_lemma1(const Network& net, const Direction& c, double psd_tol) {
  const NetworkClass cls = classify(net);
  if (!cls.connected) throw HypothesisError("lemma 1 needs a connected network");
  if (!cls.purely_resistive)
    throw HypothesisError("lemma 1 needs a purely resistive network; gauge-transform a homogeneous one first");
  require_nonzero(c, net);
  return lemma_verdict(net, c, psd_tol, LemmaKind::Complex);
}

LemmaVerdict check_lemma2(const Network& net, const Direction& c, double psd_tol) {
  const NetworkClass cls = classify(net);
  if (!cls.connected) throw HypothesisError("lemma 2 needs a connected network");
  if (!cls.all_resistive_lines)
    throw HypothesisError("lemma 2 needs Re(y) > 0 on every line; apply epsilon_regularize to lossless lines");
  require_nonzero(c, net);
  if (!c.is_real(1e-12)) throw InputError("lemma 2 takes real directions only");
  return lemma_verdict(net, c, psd_tol, LemmaKind::Real);
}

namespace {

// Exit of the ray base + s*d (s > 0) from the PSD cone, given the Cholesky
// factor of H_base (base is the normalized c_+). Returns +inf when the ray never leaves the cone.
double cone_exit(const Network& net, const Eigen::LLT<CMatrix>& base, const Direction& d) {
  const CMatrix hd = build_certificates(net, d).h;
  const CMatrix left = base.matrixL().solve(hd);
  const CMatrix m = base.matrixL().solve(left.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  const double mu = solver.eigenvalues()(0);
  if (mu >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / mu;
}

Eigen::LLT<CMatrix> cplus_factor(const Network& net) {
  const CMatrix hp = build_certificates(net, cplus_direction(net.n()).normalized()).h;
  Eigen::LLT<CMatrix> llt(hp);
  if (llt.info() != Eigen::Success || !is_positive_definite(hermitian_spectrum(hp), 1e-12))
    throw HypothesisError("H_+ is not positive definite for this network");
  return llt;
}

Direction random_direction(std::mt19937_64& rng, int n, bool real_only) {
  std::normal_distribution<double> gauss;
  Direction d{CVector(n)};
  for (int i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = real_only ? 0.0 : gauss(rng);
    d.coeffs(i) = {re, im};
  }
  return d.normalized();
}

}  // namespace

std::vector<ConeSample> sample_psd_cone(const Network& net, bool real_only, std::size_t count,
                                        std::uint64_t seed, kernels::Exec exec) {
  const Eigen::LLT<CMatrix> base = cplus_factor(net);
  const int n = net.n();
  const Direction anchor = cplus_direction(n).normalized();

  auto relative_min = [&](const Direction& c) {
    const HermitianSpectrum spec = hermitian_spectrum(build_certificates(net, c).h);
    return spec.norm() > 0.0 ? spec.min() / spec.norm() : 0.0;
  };

  return kernels::sweep(
      count,
      [&](std::size_t i) {
        ConeSample s;
        if (i == 0) {
          s.c = anchor;
          s.min_eig_rel = relative_min(anchor);
          return s;
        }
        auto rng = task_engine(seed, i);
        const Direction target = random_direction(rng, n, real_only);
        const Direction d = target + (-1.0) * anchor;
        double t = 1.0;
        if (d.norm() > 0.0) {
          const double exit = cone_exit(net, base, d);
          s.boundary = exit <= 1.0;
          t = std::min(1.0, exit);
        }
        if (i % 4 == 3) {
          std::uniform_real_distribution<double> unit(0.0, 1.0);
          t *= unit(rng);
          s.boundary = false;
        }
        s.c = (anchor + t * d).normalized();
        s.min_eig_rel = relative_min(s.c);
        return s;
      },
      exec);
}

double certificate_scale_floor(const Network& net, const Direction& c) { return floor_of(net, c); }

int zero_multiplicity(const CMatrix& a, double psd_tol, double mult_tol, double scale_floor) {
  const HermitianSpectrum spec = hermitian_spectrum(a);
  if (!is_psd(spec, psd_tol, scale_floor))
    throw HypothesisError("zero_multiplicity needs a PSD matrix, min eigenvalue " +
                          std::to_string(spec.min()));
  return count_near_zero(spec, mult_tol, scale_floor);
}

std::optional<FlatEdgeWitness> find_flat_edge(const Network& net, const Direction& c,
                                              double psd_tol, double mult_tol,
                                              double consistency_tol) {
  require_nonzero(c, net);
  const CertificateMatrices cert = build_certificates(net, c);
  const HermitianSpectrum spec = hermitian_spectrum(cert.h);
  const double floor = floor_of(net, c);
  if (!is_psd(spec, psd_tol, floor)) throw HypothesisError("find_flat_edge needs H_c PSD");
  const CMatrix basis = null_basis(spec, mult_tol, floor);
  if (basis.cols() == 0) return std::nullopt;

  const double scale = c.norm() * max_admittance(net);
  if ((basis.adjoint() * cert.j).norm() > consistency_tol * scale) return std::nullopt;

  FlatEdgeWitness w;
  w.c = c;
  w.null_basis = basis;
  w.v_null = basis.col(0).normalized();
  w.v_b = {pseudo_solve(spec, cert.j, mult_tol, floor)};
  w.hyperplane_level = cert.quadratic_value(w.v_b.v);
  const double r1 = (cert.h * w.v_null).norm();
  const double r2 = std::abs(cert.j.dot(w.v_null));
  const double r3 = (cert.h * w.v_b.v - cert.j).norm();
  w.residual = std::max({r1, r2, r3}) / scale;
  return w;
}

namespace {

// Real basis of the direction space and the matrices it induces; H_c and J_c
// are linear in the coordinates.
struct DirectionBasis {
  int n = 0;
  bool real_only = false;
  std::vector<CMatrix> h;
  std::vector<CVector> j;

  DirectionBasis(const Network& net, bool real) : n(net.n()), real_only(real) {
    const int m = real ? n : 2 * n;
    for (int k = 0; k < m; ++k) {
      Direction e{CVector::Zero(n)};
      e.coeffs(k % n) = k < n ? Complex{1.0, 0.0} : kJ;
      const CertificateMatrices cert = build_certificates(net, e);
      h.push_back(cert.h);
      j.push_back(cert.j);
    }
  }

  int dim() const { return static_cast<int>(h.size()); }

  Direction direction(const RVector& x) const {
    Direction d{CVector::Zero(n)};
    for (int k = 0; k < dim(); ++k) d.coeffs(k % n) += x(k) * (k < n ? Complex{1.0, 0.0} : kJ);
    return d;
  }

  RVector coords(const Direction& d) const {
    RVector x(dim());
    for (int k = 0; k < dim(); ++k) x(k) = k < n ? d.coeffs(k).real() : d.coeffs(k - n).imag();
    return x;
  }
};

struct SearchContext {
  const Network* net;
  const Eigen::LLT<CMatrix>* base;
  const DirectionBasis* basis;
  Direction anchor;
  double scale;
};

// Boundary point reached from the anchor along direction d, normalized.
std::optional<Direction> boundary_along(const SearchContext& ctx, const Direction& d) {
  const double exit = cone_exit(*ctx.net, *ctx.base, d);
  if (!std::isfinite(exit)) return std::nullopt;
  const Direction c = ctx.anchor + exit * d;
  if (c.norm() == 0.0) return std::nullopt;
  return c.normalized();
}

// |J^H u| / |J| for the lowest eigenvector u: the cosine between J_c and the
// null direction. Dividing by |J| rather than |c| keeps the search from
// drifting toward directions that merely shrink J_c.
double consistency_residual(const Network& net, const Direction& c) {
  const CertificateMatrices cert = build_certificates(net, c);
  const double jn = cert.j.norm();
  if (jn == 0.0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(cert.h);
  return std::abs(cert.j.dot(solver.eigenvectors().col(0))) / jn;
}

double search_objective(const gsl_vector* x, void* params) {
  const auto& ctx = *static_cast<const SearchContext*>(params);
  RVector coords(ctx.basis->dim());
  for (int k = 0; k < coords.size(); ++k) coords(k) = gsl_vector_get(x, static_cast<std::size_t>(k));
  const Direction d = ctx.basis->direction(coords);
  if (d.norm() == 0.0) return 10.0;
  const auto c = boundary_along(ctx, d);
  if (!c) return 10.0;
  return consistency_residual(*ctx.net, *c);
}

// Nelder-Mead over ray directions from the anchor, minimizing |J_c^H u| on the
// cone boundary.
Direction nelder_mead(const SearchContext& ctx, const Direction& start) {
  const int m = ctx.basis->dim();
  const RVector x0 = ctx.basis->coords(start);
  gsl_vector* x = gsl_vector_alloc(static_cast<std::size_t>(m));
  gsl_vector* step = gsl_vector_alloc(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    gsl_vector_set(x, static_cast<std::size_t>(k), x0(k));
    gsl_vector_set(step, static_cast<std::size_t>(k), 0.05 * std::max(start.norm(), 1e-3));
  }
  gsl_multimin_function fn{&search_objective, static_cast<std::size_t>(m),
                           const_cast<SearchContext*>(&ctx)};
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, static_cast<std::size_t>(m));
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  for (int iter = 0; iter < 4000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (s->fval < 1e-14) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
  }
  RVector best(m);
  for (int k = 0; k < m; ++k) best(k) = gsl_vector_get(s->x, static_cast<std::size_t>(k));
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return ctx.basis->direction(best);
}

struct PolishResult {
  Direction c;
  double residual = 0.0;
};

// Gauss-Newton on H_c u = 0, J_c^H u = 0, |c| = 1, |u| = 1 with the phase of u
// pinned against its starting value. Minimum-norm steps handle the
// rank-deficient directions of the bilinear system.
PolishResult polish(const DirectionBasis& basis, const Direction& c0, double scale) {
  const int n = basis.n;
  const int m = basis.dim();
  auto assemble = [&](const RVector& x, CMatrix& h, CVector& j) {
    h = CMatrix::Zero(n, n);
    j = CVector::Zero(n);
    for (int k = 0; k < m; ++k) {
      h += x(k) * basis.h[static_cast<std::size_t>(k)];
      j += x(k) * basis.j[static_cast<std::size_t>(k)];
    }
  };

  RVector x = basis.coords(c0.normalized());
  CMatrix h;
  CVector j;
  assemble(x, h, j);
  CVector u = Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvectors().col(0);
  const CVector ref = u;

  const int rows = 2 * n + 5;
  const int cols = m + 2 * n;
  auto residual = [&](const RVector& xx, const CVector& uu) {
    CMatrix hh;
    CVector jj;
    assemble(xx, hh, jj);
    RVector r(rows);
    const CVector hu = hh * uu / scale;
    const Complex ju = jj.dot(uu) / scale;
    r.head(n) = hu.real();
    r.segment(n, n) = hu.imag();
    r(2 * n) = ju.real();
    r(2 * n + 1) = ju.imag();
    r(2 * n + 2) = xx.squaredNorm() - 1.0;
    r(2 * n + 3) = uu.squaredNorm() - 1.0;
    r(2 * n + 4) = ref.dot(uu).imag();
    return r;
  };

  RVector r = residual(x, u);
  for (int iter = 0; iter < 60 && r.norm() > 1e-15; ++iter) {
    assemble(x, h, j);
    RMatrix jac = RMatrix::Zero(rows, cols);
    for (int k = 0; k < m; ++k) {
      const CVector hku = basis.h[static_cast<std::size_t>(k)] * u / scale;
      const Complex jku = basis.j[static_cast<std::size_t>(k)].dot(u) / scale;
      jac.block(0, k, n, 1) = hku.real();
      jac.block(n, k, n, 1) = hku.imag();
      jac(2 * n, k) = jku.real();
      jac(2 * n + 1, k) = jku.imag();
      jac(2 * n + 2, k) = 2.0 * x(k);
    }
    const CMatrix hs = h / scale;
    jac.block(0, m, n, n) = hs.real();
    jac.block(n, m, n, n) = hs.imag();
    jac.block(0, m + n, n, n) = -hs.imag();
    jac.block(n, m + n, n, n) = hs.real();
    for (int i = 0; i < n; ++i) {
      const Complex cj = std::conj(j(i)) / scale;
      jac(2 * n, m + i) = cj.real();
      jac(2 * n + 1, m + i) = cj.imag();
      jac(2 * n, m + n + i) = (kJ * cj).real();
      jac(2 * n + 1, m + n + i) = (kJ * cj).imag();
      jac(2 * n + 3, m + i) = 2.0 * u(i).real();
      jac(2 * n + 3, m + n + i) = 2.0 * u(i).imag();
      jac(2 * n + 4, m + i) = -ref(i).imag();
      jac(2 * n + 4, m + n + i) = ref(i).real();
    }
    const RVector dx = Eigen::CompleteOrthogonalDecomposition<RMatrix>(jac).solve(-r);
    RVector xn = x + dx.head(m);
    CVector un(n);
    for (int i = 0; i < n; ++i) un(i) = u(i) + Complex{dx(m + i), dx(m + n + i)};
    const RVector rn = residual(xn, un);
    if (!(rn.norm() < r.norm())) break;
    x = xn;
    u = un;
    r = rn;
  }
  return {basis.direction(x), r.norm()};
}

}  // namespace

namespace {

ProbeReport probe_piece(const Network& net, const ProbeOptions& opts) {
  const int n = net.n();
  const double scale = max_admittance(net);
  const bool phase_applies = opts.real_only && classify(net).purely_resistive;
  const std::vector<ConeSample> samples =
      sample_psd_cone(net, opts.real_only, opts.samples, opts.seed, opts.exec);

  struct Outcome {
    bool boundary = false;
    bool inconsistent = false;
    int multiplicity = -1;
    double rho = std::numeric_limits<double>::infinity();
    int phase_checked = 0;
    int phase_failures = 0;
  };

  auto examine = [&](const Direction& c) {
    Outcome o;
    const CertificateMatrices cert = build_certificates(net, c);
    const HermitianSpectrum spec = hermitian_spectrum(cert.h);
    const double floor = floor_of(net, c);
    const CMatrix basis = null_basis(spec, opts.mult_tol, floor);
    if (basis.cols() > 0) {
      o.boundary = true;
      const double projected = (basis.adjoint() * cert.j).norm();
      o.rho = cert.j.norm() > 0.0 ? projected / cert.j.norm() : 0.0;
      if (phase_applies)
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
          ++o.phase_checked;
          if (!check_phase_alignment(basis.col(k))) ++o.phase_failures;
        }
      if (projected > opts.consistency_tol * c.norm() * scale) {
        // J_c outside the range of H_c: no value of a makes A PSD.
        o.inconsistent = true;
        return o;
      }
    }
    const double a = cert.j.dot(pseudo_solve(spec, cert.j, opts.mult_tol, floor)).real();
    o.multiplicity =
        zero_multiplicity(bordered_matrix(cert.h, cert.j, a), opts.psd_tol, opts.mult_tol, floor);
    return o;
  };

  const std::vector<Outcome> outcomes =
      kernels::sweep(samples.size(), [&](std::size_t i) { return examine(samples[i].c); }, opts.exec);

  ProbeReport report;
  report.real_only = opts.real_only;
  report.samples = samples.size();
  report.min_consistency_residual = std::numeric_limits<double>::infinity();
  report.multiplicity_histogram.assign(static_cast<std::size_t>(n) + 2, 0);
  auto record = [&](int mult) {
    ++report.psd_bordered;
    ++report.multiplicity_histogram[static_cast<std::size_t>(mult)];
    report.max_multiplicity = std::max(report.max_multiplicity, mult);
  };

  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (samples[i].boundary || o.boundary) {
      ++report.boundary_samples;
      starts.push_back(i);
    }
    if (o.boundary) report.min_consistency_residual = std::min(report.min_consistency_residual, o.rho);
    if (o.inconsistent) ++report.inconsistent;
    if (o.multiplicity >= 0) record(o.multiplicity);
    report.phase_checked += static_cast<std::size_t>(o.phase_checked);
    report.phase_failures += static_cast<std::size_t>(o.phase_failures);
  }

  // Local search from the boundary samples closest to a consistent system.
  const Eigen::LLT<CMatrix> base = cplus_factor(net);
  const DirectionBasis basis(net, opts.real_only);
  const Direction anchor = cplus_direction(n).normalized();
  const SearchContext ctx{&net, &base, &basis, anchor, scale};
  std::vector<double> start_rho(samples.size());
  for (std::size_t i : starts) start_rho[i] = consistency_residual(net, samples[i].c);
  std::stable_sort(starts.begin(), starts.end(),
                   [&](std::size_t a, std::size_t b) { return start_rho[a] < start_rho[b]; });
  if (starts.size() > static_cast<std::size_t>(std::max(opts.refine_starts, 0)))
    starts.resize(static_cast<std::size_t>(std::max(opts.refine_starts, 0)));
  // Samples already flagged by their multiplicity are polished as well.
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (outcomes[i].multiplicity >= 2 && std::find(starts.begin(), starts.end(), i) == starts.end())
      starts.push_back(i);

  struct Refined {
    std::optional<FlatEdgeWitness> witness;
    int multiplicity = -1;
    double rho = std::numeric_limits<double>::infinity();
  };
  const std::vector<Refined> refined = kernels::sweep(
      starts.size(),
      [&](std::size_t s) {
        Refined out;
        const Direction c_start = samples[starts[s]].c;
        const Direction ray = nelder_mead(ctx, c_start + (-1.0) * anchor);
        const auto c_nm = boundary_along(ctx, ray);
        const PolishResult pol = polish(basis, c_nm ? *c_nm : c_start, scale);
        Direction c = pol.c.normalized();
        out.rho = consistency_residual(net, c);
        if (pol.residual > 1e-10) return out;
        const double psd_tol = opts.psd_tol;
        const double floor = floor_of(net, c);
        if (!is_psd(hermitian_spectrum(build_certificates(net, c).h), psd_tol, floor)) c = (-1.0) * c;
        if (!is_psd(hermitian_spectrum(build_certificates(net, c).h), psd_tol, floor)) return out;
        out.witness = find_flat_edge(net, c, psd_tol, opts.mult_tol, opts.consistency_tol);
        if (out.witness && out.witness->residual > 1e-8) out.witness.reset();
        if (out.witness) {
          const CertificateMatrices cert = build_certificates(net, c);
          out.multiplicity = zero_multiplicity(
              bordered_matrix(cert.h, cert.j, cert.j.dot(out.witness->v_b.v).real()), psd_tol,
              opts.mult_tol, floor);
        }
        return out;
      },
      opts.exec);

  report.refined = refined.size();
  for (const Refined& r : refined) {
    report.min_consistency_residual = std::min(report.min_consistency_residual, r.rho);
    if (!r.witness) continue;
    record(r.multiplicity);
    const bool seen = std::any_of(report.candidates.begin(), report.candidates.end(),
                                  [&](const FlatEdgeWitness& w) {
                                    return (w.c.coeffs - r.witness->c.coeffs).norm() <= 1e-6;
                                  });
    if (!seen) report.candidates.push_back(*r.witness);
  }
  return report;
}

}  // namespace

ProbeReport probe_sufficient_condition(const Network& net, const ProbeOptions& opts) {
  if (opts.samples < 1) throw InputError("probe needs at least one sample");
  const std::vector<SlackComponent> pieces = slack_components(net);
  if (pieces.size() == 1) {
    ProbeReport report = probe_piece(net, opts);
    if (!std::isfinite(report.min_consistency_residual)) report.min_consistency_residual = 0.0;
    return report;
  }

  ProbeReport report;
  report.real_only = opts.real_only;
  report.components = pieces.size();
  report.min_consistency_residual = std::numeric_limits<double>::infinity();
  report.multiplicity_histogram.assign(static_cast<std::size_t>(net.n()) + 2, 0);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const SlackComponent& piece = pieces[k];
    ProbeOptions sub = opts;
    sub.seed = opts.seed + k;
    const ProbeReport part = probe_piece(piece.network, sub);
    report.samples += part.samples;
    report.boundary_samples += part.boundary_samples;
    report.psd_bordered += part.psd_bordered;
    report.inconsistent += part.inconsistent;
    report.refined += part.refined;
    report.phase_checked += part.phase_checked;
    report.phase_failures += part.phase_failures;
    report.max_multiplicity = std::max(report.max_multiplicity, part.max_multiplicity);
    report.min_consistency_residual = std::min(report.min_consistency_residual, part.min_consistency_residual);
    for (std::size_t m = 0; m < part.multiplicity_histogram.size(); ++m)
      report.multiplicity_histogram[m] += part.multiplicity_histogram[m];
    for (const FlatEdgeWitness& w : part.candidates) {
      Direction lifted{CVector::Zero(net.n())};
      for (int i = 0; i < piece.network.n(); ++i)
        lifted.coeffs(piece.buses[static_cast<std::size_t>(i)] - 1) = w.c.coeffs(i);
      if (auto full = find_flat_edge(net, lifted, opts.psd_tol, opts.mult_tol, opts.consistency_tol))
        report.candidates.push_back(*full);
    }
  }
  if (!std::isfinite(report.min_consistency_residual)) report.min_consistency_residual = 0.0;
  return report;
}

std::vector<TheoremVerdict> theorem_verdicts(const Network& net, double angle_tol) {
  const NetworkClass cls = classify(net, angle_tol);
  std::vector<TheoremVerdict> out;

  TheoremVerdict t1{Theorem::HomogeneousTreeFullSet, false, SolvabilitySet::Full, {}, {}};
  if (!cls.connected) t1.reasons.push_back("network is not connected");
  if (cls.connected && !cls.acyclic) t1.reasons.push_back("network contains a cycle");
  if (!cls.homogeneous) t1.reasons.push_back("line admittances do not share one argument");
  t1.applicable = t1.reasons.empty();
  out.push_back(t1);

  TheoremVerdict t2{Theorem::TreeRealSet, false, SolvabilitySet::Real, {}, {}};
  if (!cls.connected) t2.reasons.push_back("network is not connected");
  if (cls.connected && !cls.acyclic) t2.reasons.push_back("network contains a cycle");
  t2.applicable = t2.reasons.empty();
  if (t2.applicable && !cls.all_resistive_lines)
    t2.notes.push_back("lines with Re(y) <= 0 present; lossless lines are covered through epsilon regularization");
  out.push_back(t2);

  TheoremVerdict t3{Theorem::ResistiveRealSet, false, SolvabilitySet::Real, {}, {}};
  if (!cls.connected) t3.reasons.push_back("network is not connected");
  if (!cls.purely_resistive) t3.reasons.push_back("network is not purely resistive");
  t3.applicable = t3.reasons.empty();
  out.push_back(t3);
  return out;
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::HomogeneousTreeFullSet: return "T1_full_set_homogeneous_tree";
    case Theorem::TreeRealSet: return "T2_real_set_tree";
    case Theorem::ResistiveRealSet: return "T3_real_set_resistive";
  }
  return "unknown";
}

std::string to_string(SolvabilitySet s) { return s == SolvabilitySet::Full ? "full" : "real"; }

std::string to_string(LemmaBranch b) {
  switch (b) {
    case LemmaBranch::AllPositive: return "all_positive";
    case LemmaBranch::UniformImaginary: return "uniform_imaginary";
    case LemmaBranch::NotApplicable: return "not_applicable";
    case LemmaBranch::Violated: return "violated";
    case LemmaBranch::Blockwise: return "blockwise";
  }
  return "unknown";
}

Network epsilon_regularize(const Network& net, double eps) {
  if (!(eps > 0.0)) throw InputError("epsilon must be positive");
  std::vector<Line> lines = net.lines();
  for (Line& line : lines)
    if (line.admittance.real() == 0.0) line.admittance += eps;
  return Network(net.n(), std::move(lines));
}

bool check_phase_alignment(const CVector& v, double tol) {
  const double len = v.norm();
  if (len == 0.0) return false;
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const Complex rot = std::conj(v(k)) / std::abs(v(k));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Complex w = rot * v(i);
    if (std::abs(w.imag()) > tol * len || w.real() < -tol * len) return false;
  }
  return true;
}

}  // namespace solvcert
