#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvcert/certificates.hpp"
#include "solvcert/geometry.hpp"
#include "solvcert/kernels.hpp"

namespace solvcert {

struct BoundaryPoint {
  Direction direction;
  VoltageProfile voltage;
  PowerInjection injection;
  /// min of c . p over the solvability set
  double support_value = 0.0;
};

/// Minimizer of c . p for H_c positive definite: V = H_c^{-1} J_c. Throws
/// HypothesisError when H_c is singular or indefinite (use find_flat_edge).
BoundaryPoint supporting_point(const Network& net, const Direction& c, double psd_tol = 1e-9);

/// Supporting points for `count` directions strictly inside the PSD cone;
/// point 0 uses c_+.
std::vector<BoundaryPoint> sample_boundary(const Network& net, std::size_t count, std::uint64_t seed,
                                           kernels::Exec exec = kernels::Exec::Parallel);

/// Flat array of injections, 2n doubles per point: (P_1..P_n, Q_1..Q_n).
struct ImageCloud {
  int n = 0;
  std::vector<double> data;

  std::size_t size() const { return n ? data.size() / (2 * static_cast<std::size_t>(n)) : 0; }
  const double* point(std::size_t i) const { return data.data() + i * 2 * static_cast<std::size_t>(n); }
  PowerInjection injection(std::size_t i) const;
};

struct CloudSpec {
  enum class Mode { Random, Grid } mode = Mode::Random;
  std::size_t count = 100000;   // random mode
  std::size_t per_axis = 10;    // grid mode
  kernels::Box box;
  std::uint64_t seed = 1;
  kernels::Exec exec = kernels::Exec::Parallel;
};

ImageCloud image_cloud(const Network& net, const CloudSpec& spec);

/// Images of voltages on the level set c_+ . p = level inside the box.
ImageCloud level_cloud(const Network& net, double level, std::size_t count, kernels::Box box,
                       std::uint64_t seed, kernels::Exec exec = kernels::Exec::Parallel);

/// Linear functional w . p on the stacked injection vector.
using Functional = RVector;

double apply(const Functional& f, const double* p);

struct SliceView {
  /// Projection of the selected points for the area comparison.
  std::array<Functional, 2> axes;
  /// Keep only points with f . p >= max - depth: a thin cap toward the
  /// supporting line of f.
  struct Cap {
    Functional f;
    double depth = 0.01;
  };
  std::optional<Cap> cap;
  /// Projection for the flat-segment detector; defaults to `axes`.
  std::optional<std::array<Functional, 2>> flat_axes;
  /// Outward normal (in flat_axes coordinates) of the line to probe.
  std::optional<geometry::Point2> flat_hint;
  /// Alpha as a fraction of the hull diameter; <= 0 selects twice the median
  /// nearest-neighbour distance.
  double alpha_fraction = 0.15;
  double flat_eps = 1e-3;
  std::string label;
};

/// (Q_1, Q_2).
SliceView default_view(int n);

/// View adapted to a flat-edge direction c_w: cap on f = -c_w . p (scaled so
/// its largest coefficient is 1), area projection on the first two axes
/// orthogonal to c_+ and c_w, flatness probed in (first axis, f) toward
/// increasing f.
SliceView witness_view(int n, const Direction& witness);

struct SliceReport {
  double level = 0.0;
  double thickness = 0.0;
  std::size_t in_slab = 0;
  std::vector<geometry::Point2> points2d;
  bool insufficient_data = false;
  double hull_area = 0.0;
  double cloud_area = 0.0;
  double convexity_ratio = 0.0;
  double alpha = 0.0;
  geometry::Flatness flatness;
  std::string view;
};

/// Selects cloud points with |c_+ . p - level| <= thickness (default: 1% of
/// the cloud's c_+ . p range, at least 1e-9 (1 + |level|)) and measures the
/// projected slice. Fewer than 10 points gives insufficient_data.
SliceReport slice_convexity(const ImageCloud& cloud, double level, std::optional<double> thickness,
                            const SliceView& view);

/// P(c): min of c_+ . p over the edge v_b + span(null basis).
double p_of_c(const Network& net, const FlatEdgeWitness& witness);

struct SubsetBounds {
  double p_min = 0.0;
  std::optional<double> p_max;  // nullopt: unbounded
  std::vector<FlatEdgeWitness> witnesses;
};

SubsetBounds subset_bounds(const Network& net, const ProbeReport& probe);

}  // namespace solvcert
