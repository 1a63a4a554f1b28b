#include "solvcert/quadratic_map.hpp"

#include <cmath>

#include "solvcert/random.hpp"

namespace solvcert {

RVector PowerInjection::stacked() const {
  const Eigen::Index n = s.size();
  RVector p(2 * n);
  p.head(n) = s.real();
  p.tail(n) = s.imag();
  return p;
}

Direction Direction::from_stacked(const RVector& c) {
  if (c.size() % 2 != 0) throw InputError("stacked direction must have even length");
  const Eigen::Index n = c.size() / 2;
  Direction d;
  d.coeffs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) d.coeffs(i) = {c(i), c(n + i)};
  return d;
}

RVector Direction::stacked() const {
  const Eigen::Index n = coeffs.size();
  RVector c(2 * n);
  c.head(n) = coeffs.real();
  c.tail(n) = coeffs.imag();
  return c;
}

Direction Direction::normalized() const {
  const double len = norm();
  if (len == 0.0) throw InputError("cannot normalize a zero direction");
  return {coeffs / len};
}

bool Direction::is_real(double tol) const {
  return coeffs.imag().cwiseAbs().maxCoeff() <= tol * norm();
}

double Direction::apply(const PowerInjection& p) const {
  if (p.s.size() != coeffs.size()) throw InputError("direction/injection dimension mismatch");
  // sum Re(conj(C_i) S_i)
  return coeffs.dot(p.s).real();
}

Direction operator+(const Direction& a, const Direction& b) { return {a.coeffs + b.coeffs}; }
Direction operator*(double s, const Direction& d) { return {s * d.coeffs}; }

double CertificateMatrices::quadratic_value(const CVector& v) const {
  return v.dot(h * v).real() - 2.0 * j.dot(v).real();
}

CMatrix bordered_matrix(const CMatrix& h, const CVector& j, double a) {
  const Eigen::Index n = h.rows();
  CMatrix out(n + 1, n + 1);
  out(0, 0) = a;
  out.block(0, 1, 1, n) = -j.adjoint();
  out.block(1, 0, n, 1) = -j;
  out.block(1, 1, n, n) = h;
  return out;
}

namespace {

void check_dimension(const Network& net, Eigen::Index size, const char* what) {
  if (size != net.n())
    throw InputError(std::string(what) + " has length " + std::to_string(size) +
                     ", network has n=" + std::to_string(net.n()));
}

}  // namespace

PowerInjection power_flow(const Network& net, const VoltageProfile& v) {
  check_dimension(net, v.v.size(), "voltage profile");
  const int n = net.n();
  PowerInjection out{CVector::Zero(n)};
  auto voltage = [&](BusId bus) { return bus == kSlack ? Complex{1.0, 0.0} : v.v(bus - 1); };
  for (BusId i = 1; i <= n; ++i) {
    const Complex vi = v.v(i - 1);
    Complex current{};
    for (const auto& [k, y] : net.neighbors(i)) current += y * (vi - voltage(k));
    out.s(i - 1) = vi * std::conj(current);
  }
  return out;
}

double functional_value(const Network& net, const VoltageProfile& v, const Direction& c) {
  check_dimension(net, c.coeffs.size(), "direction");
  return c.apply(power_flow(net, v));
}

CertificateMatrices build_certificates(const Network& net, const Direction& c, double a) {
  check_dimension(net, c.coeffs.size(), "direction");
  const int n = net.n();
  CertificateMatrices out;
  out.h = CMatrix::Zero(n, n);
  out.j = CVector::Zero(n);
  for (BusId i = 1; i <= n; ++i) {
    const Complex ci = c.coeffs(i - 1);
    Complex total{};
    for (const auto& [k, y] : net.neighbors(i)) {
      total += y;
      if (k == kSlack) {
        out.j(i - 1) = ci * y / 2.0;
      } else {
        out.h(i - 1, k - 1) = -(ci * y + std::conj(c.coeffs(k - 1)) * std::conj(y)) / 2.0;
      }
    }
    out.h(i - 1, i - 1) = (ci * total).real();
  }
  out.border_a = a;
  out.a_matrix = bordered_matrix(out.h, out.j, a);
  return out;
}

Direction cplus_direction(int n) {
  if (n < 1) throw InputError("cplus_direction needs n >= 1");
  return {CVector::Ones(n)};
}

VoltageProfile flat_profile(int n) { return {CVector::Ones(n)}; }

namespace {

double inf_norm(const CVector& r) {
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

// Real Jacobian of (Re S, Im S) with respect to (Re V, Im V).
RMatrix power_jacobian(const Network& net, const CVector& v) {
  const int n = net.n();
  CVector current = CVector::Zero(n);
  for (BusId i = 1; i <= n; ++i)
    for (const auto& [k, y] : net.neighbors(i))
      current(i - 1) += y * (v(i - 1) - (k == kSlack ? Complex{1.0, 0.0} : v(k - 1)));

  RMatrix jac = RMatrix::Zero(2 * n, 2 * n);
  for (BusId i = 1; i <= n; ++i) {
    const Eigen::Index r = i - 1;
    // dS_i/dV_k for the reduced admittance matrix entry Y_ik
    auto add = [&](Eigen::Index col, Complex y_ik) {
      const Complex d_re = v(r) * std::conj(y_ik);
      const Complex d_im = -kJ * v(r) * std::conj(y_ik);
      jac(r, col) += d_re.real();
      jac(n + r, col) += d_re.imag();
      jac(r, n + col) += d_im.real();
      jac(n + r, n + col) += d_im.imag();
    };
    Complex diag{};
    for (const auto& [k, y] : net.neighbors(i)) {
      diag += y;
      if (k != kSlack) add(k - 1, -y);
    }
    add(r, diag);
    const Complex ci = std::conj(current(r));
    jac(r, r) += ci.real();
    jac(n + r, r) += ci.imag();
    jac(r, n + r) += (kJ * ci).real();
    jac(n + r, n + r) += (kJ * ci).imag();
  }
  return jac;
}

}  // namespace

NewtonResult newton_feasibility(const Network& net, const PowerInjection& target,
                                const VoltageProfile& start, const NewtonOptions& opts) {
  if (!(opts.tol > 0.0)) throw InputError("newton tolerance must be positive");
  check_dimension(net, target.s.size(), "target injection");
  check_dimension(net, start.v.size(), "start profile");
  const int n = net.n();

  NewtonResult result;
  CVector v = start.v;
  CVector residual = power_flow(net, {v}).s - target.s;
  double norm = inf_norm(residual);
  for (int iter = 0;; ++iter) {
    result.iterations = iter;
    if (!std::isfinite(norm)) {
      result.reason = "diverged";
      break;
    }
    if (norm <= opts.tol) {
      result.converged = true;
      break;
    }
    if (iter >= opts.max_iter) {
      result.reason = "iteration cap";
      break;
    }
    const RMatrix jac = power_jacobian(net, v);
    Eigen::FullPivLU<RMatrix> lu(jac);
    if (!lu.isInvertible()) {
      result.reason = "singular Jacobian";
      break;
    }
    RVector f(2 * n);
    f.head(n) = residual.real();
    f.tail(n) = residual.imag();
    const RVector dx = lu.solve(-f);
    CVector step(n);
    for (int i = 0; i < n; ++i) step(i) = {dx(i), dx(n + i)};

    double alpha = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 12; ++halving, alpha *= 0.5) {
      const CVector trial = v + alpha * step;
      const CVector trial_res = power_flow(net, {trial}).s - target.s;
      const double trial_norm = inf_norm(trial_res);
      if (std::isfinite(trial_norm) && trial_norm < norm) {
        v = trial;
        residual = trial_res;
        norm = trial_norm;
        improved = true;
        break;
      }
    }
    if (!improved) {
      result.iterations = iter + 1;
      result.reason = "line search stalled";
      break;
    }
  }
  result.voltage = {v};
  result.residual = norm;
  return result;
}

NewtonResult multistart_feasibility(const Network& net, const PowerInjection& target,
                                    std::uint64_t seed, const NewtonOptions& opts,
                                    int per_radius) {
  const int n = net.n();
  NewtonResult last = newton_feasibility(net, target, flat_profile(n), opts);
  if (last.converged) return last;
  std::normal_distribution<double> gauss;
  const double radii[] = {0.2, 0.5, 1.0};
  std::uint64_t task = 0;
  for (double r : radii) {
    for (int k = 0; k < per_radius; ++k) {
      auto rng = task_engine(seed, task++);
      CVector u(n);
      for (int i = 0; i < n; ++i) u(i) = {gauss(rng), gauss(rng)};
      u.normalize();
      last = newton_feasibility(net, target, {CVector::Ones(n) + r * u}, opts);
      if (last.converged) return last;
    }
  }
  return last;
}

}  // namespace solvcert
