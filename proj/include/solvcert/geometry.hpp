#pragma once

#include <array>
#include <optional>
#include <vector>

namespace solvcert::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Convex hull, counter-clockwise, collinear points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

/// Signed shoelace area (positive for counter-clockwise polygons).
double polygon_area(const std::vector<Point2>& poly);

/// Largest pairwise distance between hull vertices.
double hull_diameter(const std::vector<Point2>& hull);

struct Triangle {
  std::array<int, 3> v{};  // indices into the input points
  double area = 0.0;
  double circumradius = 0.0;
};

/// Delaunay triangulation, dual of the Voronoi diagram of the points after
/// snapping them to a 2^30 integer grid over their bounding box. Points that
/// snap to the same grid node are merged (the first one is kept).
std::vector<Triangle> delaunay(const std::vector<Point2>& pts);

/// Area of the union of Delaunay triangles with circumradius <= alpha.
double alpha_shape_area(const std::vector<Triangle>& tris, double alpha);

/// Median distance from each point to its nearest neighbour, read off the
/// Delaunay edges.
double median_nearest_neighbor(const std::vector<Point2>& pts, const std::vector<Triangle>& tris);

struct Flatness {
  bool fires = false;
  /// log10(span(10 eps) / span(eps)): about 1/2 where the boundary is smooth
  /// and strictly curved, near 0 along a straight segment.
  double exponent = 0.0;
  double span_fine = 0.0;    // relative to the hull diameter
  double span_coarse = 0.0;
  Point2 normal;             // outward unit normal of the probed supporting line
};

/// Probes one supporting line of the cloud: the one with outward normal
/// `hint` when given, otherwise the hull edge with the largest fine span.
/// span(e) is the extent, along the line, of the points within e*D of it
/// (D the hull diameter). The detector fires when the exponent is at most
/// `threshold`.
Flatness detect_flat_segment(const std::vector<Point2>& pts, const std::vector<Point2>& hull,
                             std::optional<Point2> hint, double eps = 1e-3,
                             double threshold = 0.375);

}  // namespace solvcert::geometry
