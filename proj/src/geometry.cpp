#include "solvcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <boost/polygon/voronoi.hpp>

namespace solvcert::geometry {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(const std::vector<Point2>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double hull_diameter(const std::vector<Point2>& hull) {
  double d = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t k = i + 1; k < hull.size(); ++k) d = std::max(d, dist(hull[i], hull[k]));
  return d;
}

std::vector<Triangle> delaunay(const std::vector<Point2>& pts) {
  using boost::polygon::voronoi_diagram;
  using IPoint = boost::polygon::point_data<int>;
  if (pts.size() < 3) return {};

  double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
  for (const Point2& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (!(span > 0.0)) return {};
  const double grid = static_cast<double>(1 << 30) / span;

  std::vector<IPoint> sites;
  std::vector<int> origin;
  std::map<std::pair<int, int>, int> seen;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int gx = static_cast<int>(std::lround((pts[i].x - lo_x) * grid));
    const int gy = static_cast<int>(std::lround((pts[i].y - lo_y) * grid));
    if (!seen.emplace(std::pair(gx, gy), static_cast<int>(i)).second) continue;
    sites.emplace_back(gx, gy);
    origin.push_back(static_cast<int>(i));
  }

  voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(sites.begin(), sites.end(), &vd);

  std::vector<Triangle> tris;
  std::vector<int> ring;
  for (const auto& vertex : vd.vertices()) {
    ring.clear();
    const auto* edge = vertex.incident_edge();
    do {
      ring.push_back(origin[edge->cell()->source_index()]);
      edge = edge->rot_next();
    } while (edge != vertex.incident_edge());
    // cocircular sites give a polygon; fan it
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
      Triangle t;
      t.v = {ring[0], ring[k], ring[k + 1]};
      const Point2& a = pts[static_cast<std::size_t>(t.v[0])];
      const Point2& b = pts[static_cast<std::size_t>(t.v[1])];
      const Point2& c = pts[static_cast<std::size_t>(t.v[2])];
      t.area = 0.5 * std::abs(cross(a, b, c));
      t.circumradius = t.area > 0.0 ? dist(a, b) * dist(b, c) * dist(c, a) / (4.0 * t.area)
                                    : std::numeric_limits<double>::infinity();
      tris.push_back(t);
    }
  }
  return tris;
}

double alpha_shape_area(const std::vector<Triangle>& tris, double alpha) {
  double area = 0.0;
  for (const Triangle& t : tris)
    if (t.circumradius <= alpha) area += t.area;
  return area;
}

double median_nearest_neighbor(const std::vector<Point2>& pts, const std::vector<Triangle>& tris) {
  std::vector<double> nearest(pts.size(), std::numeric_limits<double>::infinity());
  for (const Triangle& t : tris)
    for (int e = 0; e < 3; ++e) {
      const auto a = static_cast<std::size_t>(t.v[static_cast<std::size_t>(e)]);
      const auto b = static_cast<std::size_t>(t.v[static_cast<std::size_t>((e + 1) % 3)]);
      const double d = dist(pts[a], pts[b]);
      nearest[a] = std::min(nearest[a], d);
      nearest[b] = std::min(nearest[b], d);
    }
  std::erase_if(nearest, [](double d) { return !std::isfinite(d); });
  if (nearest.empty()) return 0.0;
  auto mid = nearest.begin() + static_cast<std::ptrdiff_t>(nearest.size() / 2);
  std::nth_element(nearest.begin(), mid, nearest.end());
  return *mid;
}

namespace {

// Extent along the line of the points within `band` of the supporting line
// {p : n.p = level}.
double band_span(const std::vector<Point2>& pts, const Point2& n, double level, double band) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point2& p : pts) {
    if (level - (n.x * p.x + n.y * p.y) > band) continue;
    const double s = -n.y * p.x + n.x * p.y;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi >= lo ? hi - lo : 0.0;
}

double support_level(const std::vector<Point2>& pts, const Point2& n) {
  double level = -std::numeric_limits<double>::infinity();
  for (const Point2& p : pts) level = std::max(level, n.x * p.x + n.y * p.y);
  return level;
}

}  // namespace

Flatness detect_flat_segment(const std::vector<Point2>& pts, const std::vector<Point2>& hull,
                             std::optional<Point2> hint, double eps, double threshold) {
  Flatness out;
  const double diam = hull_diameter(hull);
  if (pts.empty() || hull.size() < 3 || !(diam > 0.0)) return out;

  std::vector<Point2> normals;
  if (hint) {
    const double len = std::hypot(hint->x, hint->y);
    normals.push_back({hint->x / len, hint->y / len});
  } else {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Point2& a = hull[i];
      const Point2& b = hull[(i + 1) % hull.size()];
      const double len = dist(a, b);
      // counter-clockwise hull: outward normal is the edge rotated clockwise
      normals.push_back({(b.y - a.y) / len, -(b.x - a.x) / len});
    }
  }

  double best = -1.0;
  for (const Point2& n : normals) {
    const double level = support_level(hull, n);
    const double fine = band_span(pts, n, level, eps * diam);
    if (fine <= best) continue;
    best = fine;
    out.normal = n;
    out.span_fine = fine / diam;
    out.span_coarse = band_span(pts, n, level, 10.0 * eps * diam) / diam;
  }
  out.exponent = out.span_fine > 0.0 ? std::log10(out.span_coarse / out.span_fine) : 1.0;
  out.fires = out.exponent <= threshold;
  return out;
}

}  // namespace solvcert::geometry
