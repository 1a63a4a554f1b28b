#include "solvcert/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace solvcert {

BoundaryPoint supporting_point(const Network& net, const Direction& c, double psd_tol) {
  const CertificateMatrices cert = build_certificates(net, c);
  if (!is_positive_definite(hermitian_spectrum(cert.h), psd_tol))
    throw HypothesisError("supporting_point needs H_c positive definite; singular directions go to find_flat_edge");
  BoundaryPoint out;
  out.direction = c;
  out.voltage = {cert.h.llt().solve(cert.j)};
  out.support_value = -cert.j.dot(out.voltage.v).real();
  out.injection = power_flow(net, out.voltage);
  return out;
}

std::vector<BoundaryPoint> sample_boundary(const Network& net, std::size_t count, std::uint64_t seed,
                                           kernels::Exec exec) {
  if (count == 0) return {};
  // Interior cone samples make up at least a quarter of every draw.
  const std::vector<ConeSample> cone = sample_psd_cone(net, false, 4 * count + 4, seed, exec);
  std::vector<Direction> dirs;
  for (const ConeSample& s : cone) {
    if (dirs.size() == count) break;
    if (s.min_eig_rel > 1e-6) dirs.push_back(s.c);
  }
  return kernels::sweep(dirs.size(), [&](std::size_t i) { return supporting_point(net, dirs[i]); }, exec);
}

PowerInjection ImageCloud::injection(std::size_t i) const {
  const double* p = point(i);
  PowerInjection s{CVector(n)};
  for (int k = 0; k < n; ++k) s.s(k) = {p[k], p[n + k]};
  return s;
}

ImageCloud image_cloud(const Network& net, const CloudSpec& spec) {
  const kernels::CompiledNetwork compiled(net);
  ImageCloud out{net.n(), {}};
  if (spec.mode == CloudSpec::Mode::Grid)
    out.data = kernels::grid_cloud(compiled, spec.per_axis, spec.box, spec.exec);
  else
    out.data = kernels::random_cloud(compiled, spec.count, spec.box, spec.seed, spec.exec);
  return out;
}

ImageCloud level_cloud(const Network& net, double level, std::size_t count, kernels::Box box,
                       std::uint64_t seed, kernels::Exec exec) {
  const kernels::CompiledNetwork compiled(net);
  const CertificateMatrices form = build_certificates(net, cplus_direction(net.n()));
  return {net.n(), kernels::level_set_cloud(compiled, form, level, count, box, seed, exec)};
}

double apply(const Functional& f, const double* p) {
  double v = 0.0;
  for (Eigen::Index k = 0; k < f.size(); ++k) v += f(k) * p[k];
  return v;
}

namespace {

Functional unit_max(const Functional& f) { return f / f.cwiseAbs().maxCoeff(); }

void require_plane(int n) {
  if (n < 2) throw InputError("slice views need at least two PQ buses");
}

}  // namespace

SliceView default_view(int n) {
  require_plane(n);
  SliceView view;
  view.axes[0] = Functional::Zero(2 * n);
  view.axes[1] = Functional::Zero(2 * n);
  view.axes[0](n) = 1.0;
  view.axes[1](n + 1) = 1.0;
  view.label = "Q1,Q2";
  return view;
}

SliceView witness_view(int n, const Direction& witness) {
  require_plane(n);
  const RVector w = witness.stacked();
  if (w.norm() == 0.0) throw InputError("witness direction is zero");
  std::vector<RVector> basis{cplus_direction(n).stacked().normalized()};
  RVector wn = w - basis[0].dot(w) * basis[0];
  if (wn.norm() < 1e-12 * w.norm()) throw InputError("witness direction is parallel to c_+");
  basis.push_back(wn.normalized());
  std::vector<Functional> complement;
  for (int k = 0; k < 2 * n && complement.size() < 2; ++k) {
    RVector e = RVector::Unit(2 * n, k);
    for (const RVector& b : basis) e -= b.dot(e) * b;
    if (e.norm() < 1e-9) continue;
    e.normalize();
    basis.push_back(e);
    complement.push_back(unit_max(e));
  }
  SliceView view;
  view.axes = {complement[0], complement[1]};
  const Functional f = unit_max(-w);
  view.cap = SliceView::Cap{f, 0.01};
  view.flat_axes = std::array<Functional, 2>{complement[0], f};
  view.flat_hint = geometry::Point2{0.0, 1.0};
  view.label = "witness-cap";
  return view;
}

SliceReport slice_convexity(const ImageCloud& cloud, double level, std::optional<double> thickness,
                            const SliceView& view) {
  const int n = cloud.n;
  if (cloud.size() == 0) throw InputError("slice needs a nonempty cloud");
  for (const Functional& f : view.axes)
    if (f.size() != 2 * n) throw InputError("projection functional has the wrong length");
  auto total = [&](const double* p) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += p[k];
    return s;
  };

  SliceReport out;
  out.level = level;
  out.view = view.label;
  if (thickness) {
    if (!(*thickness > 0.0)) throw InputError("slice thickness must be positive");
    out.thickness = *thickness;
  } else {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      lo = std::min(lo, total(cloud.point(i)));
      hi = std::max(hi, total(cloud.point(i)));
    }
    out.thickness = std::max(0.01 * (hi - lo), 1e-9 * (1.0 + std::abs(level)));
  }

  std::vector<std::size_t> slab;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (std::abs(total(cloud.point(i)) - level) <= out.thickness) slab.push_back(i);
  out.in_slab = slab.size();

  std::vector<std::size_t> kept = slab;
  if (view.cap && !slab.empty()) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i : slab) top = std::max(top, apply(view.cap->f, cloud.point(i)));
    std::erase_if(kept, [&](std::size_t i) { return apply(view.cap->f, cloud.point(i)) < top - view.cap->depth; });
  }
  out.points2d.reserve(kept.size());
  for (std::size_t i : kept)
    out.points2d.push_back({apply(view.axes[0], cloud.point(i)), apply(view.axes[1], cloud.point(i))});
  if (out.points2d.size() < 10) {
    out.insufficient_data = true;
    return out;
  }

  const std::vector<geometry::Point2> hull = geometry::convex_hull(out.points2d);
  out.hull_area = geometry::polygon_area(hull);
  const std::vector<geometry::Triangle> tris = geometry::delaunay(out.points2d);
  out.alpha = view.alpha_fraction > 0.0 ? view.alpha_fraction * geometry::hull_diameter(hull)
                                        : 2.0 * geometry::median_nearest_neighbor(out.points2d, tris);
  out.cloud_area = geometry::alpha_shape_area(tris, out.alpha);
  out.convexity_ratio = out.hull_area > 0.0 ? out.cloud_area / out.hull_area : 0.0;

  std::vector<geometry::Point2> flat_pts;
  if (view.flat_axes) {
    const auto& fa = *view.flat_axes;
    flat_pts.reserve(slab.size());
    for (std::size_t i : slab) flat_pts.push_back({apply(fa[0], cloud.point(i)), apply(fa[1], cloud.point(i))});
  } else {
    flat_pts = out.points2d;
  }
  // every hull edge is scanned without a hint; thin the cloud for that case
  if (!view.flat_hint && flat_pts.size() > 20000) {
    const std::size_t stride = flat_pts.size() / 20000 + 1;
    std::vector<geometry::Point2> thin;
    for (std::size_t i = 0; i < flat_pts.size(); i += stride) thin.push_back(flat_pts[i]);
    flat_pts.swap(thin);
  }
  out.flatness = geometry::detect_flat_segment(flat_pts, geometry::convex_hull(flat_pts), view.flat_hint,
                                               view.flat_eps);
  return out;
}

double p_of_c(const Network& net, const FlatEdgeWitness& witness) {
  const CertificateMatrices plus = build_certificates(net, cplus_direction(net.n()));
  const CMatrix& basis = witness.null_basis;
  CVector v = witness.v_b.v;
  if (basis.cols() > 0) {
    const CMatrix reduced = basis.adjoint() * plus.h * basis;
    Eigen::LLT<CMatrix> llt(reduced);
    if (llt.info() != Eigen::Success) throw std::logic_error("p_of_c: reduced system is singular");
    const CVector t = -llt.solve(basis.adjoint() * (plus.h * v - plus.j));
    v += basis * t;
  }
  return plus.quadratic_value(v);
}

SubsetBounds subset_bounds(const Network& net, const ProbeReport& probe) {
  SubsetBounds out;
  out.p_min = supporting_point(net, cplus_direction(net.n())).support_value;
  for (const FlatEdgeWitness& w : probe.candidates) {
    const double p = p_of_c(net, w);
    if (!out.p_max || p < *out.p_max) out.p_max = p;
    out.witnesses.push_back(w);
  }
  return out;
}

}  // namespace solvcert
