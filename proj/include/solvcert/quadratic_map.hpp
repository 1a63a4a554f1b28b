#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "solvcert/linalg.hpp"
#include "solvcert/network.hpp"

namespace solvcert {

/// Complex PQ-bus voltages V_1..V_n; the slack voltage is fixed at 1.
struct VoltageProfile {
  CVector v;
};

/// Complex injections S_i = P_i + j Q_i; negative P is consumption.
struct PowerInjection {
  CVector s;

  /// Stacked real vector (P_1..P_n, Q_1..Q_n).
  RVector stacked() const;
};

/// Linear functional on powers, c . p = sum Re(conj(C_i) S_i), stored as the
/// complex coefficients C_i = c_i + j c_{n+i}.
struct Direction {
  CVector coeffs;

  static Direction from_stacked(const RVector& c);
  RVector stacked() const;
  int n() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
  Direction normalized() const;
  /// All Im(C_i) == 0 up to `tol * norm()`.
  bool is_real(double tol = 0.0) const;
  /// Applies the functional to an injection.
  double apply(const PowerInjection& p) const;
};

Direction operator+(const Direction& a, const Direction& b);
Direction operator*(double s, const Direction& d);

/// Quadratic-form representation of c . p(V):
///   c . p = V^H H V - V^H J - J^H V
/// plus the bordered matrix [[a, -J^H], [-J, H]].
struct CertificateMatrices {
  CMatrix h;
  CVector j;
  double border_a = 0.0;
  CMatrix a_matrix;

  /// V^H H V - 2 Re(J^H V).
  double quadratic_value(const CVector& v) const;
};

CMatrix bordered_matrix(const CMatrix& h, const CVector& j, double a);

PowerInjection power_flow(const Network& net, const VoltageProfile& v);

double functional_value(const Network& net, const VoltageProfile& v, const Direction& c);

CertificateMatrices build_certificates(const Network& net, const Direction& c, double a = 0.0);

/// C_i = 1 for every PQ bus: the direction of total real injection.
Direction cplus_direction(int n);

struct NewtonOptions {
  double tol = 1e-8;
  int max_iter = 50;
};

struct NewtonResult {
  /// Converged to ||p(V) - target||_inf <= tol. Failure is never a proof of
  /// infeasibility, only "inconclusive".
  bool converged = false;
  VoltageProfile voltage;
  int iterations = 0;
  double residual = 0.0;
  std::string reason;
};

/// Damped Newton-Raphson in rectangular coordinates (Re V, Im V).
NewtonResult newton_feasibility(const Network& net, const PowerInjection& target,
                                const VoltageProfile& start, const NewtonOptions& opts = {});

/// Flat start followed by starts V = 1 + r u for r in {0.2, 0.5, 1.0} and
/// `per_radius` random unit vectors u each. Returns the first converged run,
/// or the last inconclusive one.
NewtonResult multistart_feasibility(const Network& net, const PowerInjection& target,
                                    std::uint64_t seed, const NewtonOptions& opts = {},
                                    int per_radius = 3);

VoltageProfile flat_profile(int n);

}  // namespace solvcert
