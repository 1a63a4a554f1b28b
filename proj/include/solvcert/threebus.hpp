#pragma once

// Closed forms for the radial chain slack - bus 1 - bus 2 with y01 = y and
// y12 = 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvcert/boundary.hpp"

namespace solvcert::threebus {

struct Model {
  Complex y;

  Network network() const;
};

struct AnalyticBounds {
  double p_min = 0.0;
  std::optional<double> p_max;                 // unbounded when Im y = 0
  std::optional<double> edge_level_magnitude;  // |y|^2 / (4 |Im y|)
};

/// Throws InputError unless Re y > 0.
AnalyticBounds analytic_bounds(const Model& m);

/// Value of Im(S_1 + S_2) along the flat edge, +|y|^2 / (4 Im y). The sign was
/// fixed by evaluating the edge family, not taken from the closed form.
double edge_imag_total(const Model& m);

/// Flat-edge direction with H_c PSD: -sgn(Im y) j (1, 1) / sqrt(2).
Direction witness_direction(const Model& m);

CVector edge_base(const Model& m);  // (-j y / (2 Im y), 0)
CVector edge_null();                // (0, 1)

/// S(V_b + z V_null). Throws HypothesisError when Im y = 0.
PowerInjection edge_curve(const Model& m, Complex z);

/// Edge parameter minimizing Re(S_1 + S_2); there the total equals p_max and
/// Re(S_1 + S_2) - p_max = |z - z_min|^2 (the coefficient is Re y_12 = 1).
Complex edge_argmin(const Model& m);

struct CrossValidation {
  Model model;
  AnalyticBounds analytic;
  NetworkClass network_class;
  std::vector<TheoremVerdict> verdicts;
  ProbeReport probe;
  SubsetBounds computed;
  /// |<c, j(1,1)/sqrt 2>| for the first candidate, 0 without candidates.
  double direction_alignment = 0.0;
  std::optional<double> computed_edge_level;
  std::optional<double> analytic_edge_level;  // c . p on the edge for the unit witness
  bool agree = false;
  std::vector<std::string> diagnostics;
};

/// Runs classify, probe, find_flat_edge and subset_bounds on the chain and
/// compares with the closed forms (relative tolerance `rel_tol`).
CrossValidation cross_validate(const Model& m, std::uint64_t seed, std::size_t samples = 500,
                               double rel_tol = 1e-6, kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace solvcert::threebus
