#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "solvcert/geometry.hpp"

using namespace solvcert::geometry;

namespace {

std::vector<Point2> uniform_disk(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point2> pts;
  while (pts.size() < count) {
    const Point2 p{u(rng), u(rng)};
    if (p.x * p.x + p.y * p.y <= 1.0) pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("convex hull and area") {
  std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {0.2, 0.7}};
  const auto hull = convex_hull(pts);
  CHECK(hull.size() == 4);
  CHECK(polygon_area(hull) == doctest::Approx(1.0));
  CHECK(hull_diameter(hull) == doctest::Approx(std::sqrt(2.0)));
  std::vector<Point2> cw(hull.rbegin(), hull.rend());
  CHECK(polygon_area(cw) == doctest::Approx(-1.0));
  CHECK(convex_hull({{1, 1}}).size() == 1);
}

TEST_CASE("delaunay of a square grid") {
  std::vector<Point2> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pts.push_back({double(i), double(j)});
  const auto tris = delaunay(pts);
  // 2 (N - 1) - h triangles for N points with h on the hull; cocircular
  // squares are split into two each
  CHECK(tris.size() == 32);
  double area = 0.0;
  for (const auto& t : tris) area += t.area;
  CHECK(area == doctest::Approx(16.0));
  CHECK(alpha_shape_area(tris, 0.8) == doctest::Approx(16.0));
  CHECK(alpha_shape_area(tris, 0.5) == 0.0);
  CHECK(median_nearest_neighbor(pts, tris) == doctest::Approx(1.0));
}

TEST_CASE("alpha shape: disk versus crescent") {
  const auto disk = uniform_disk(20000, 1);
  const auto tris = delaunay(disk);
  const double hull = polygon_area(convex_hull(disk));
  CHECK(alpha_shape_area(tris, 0.15 * 2.0) / hull > 0.99);

  std::vector<Point2> crescent;
  for (const Point2& p : disk)
    if ((p.x - 0.6) * (p.x - 0.6) + p.y * p.y > 0.5) crescent.push_back(p);
  const double ratio = alpha_shape_area(delaunay(crescent), 0.3) / polygon_area(convex_hull(crescent));
  CHECK(ratio < 0.9);
}

TEST_CASE("flat segment detector") {
  SUBCASE("square edge fires") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts;
    for (int k = 0; k < 40000; ++k) pts.push_back({u(rng), u(rng)});
    const Flatness f = detect_flat_segment(pts, convex_hull(pts), Point2{0.0, 1.0});
    CHECK(f.fires);
    CHECK(f.exponent < 0.2);
  }
  SUBCASE("disk does not fire") {
    const auto pts = uniform_disk(40000, 4);
    const Flatness f = detect_flat_segment(pts, convex_hull(pts), Point2{0.0, 1.0});
    CHECK_FALSE(f.fires);
    CHECK(f.exponent > 0.4);
    CHECK(f.normal.y == doctest::Approx(1.0));
  }
  SUBCASE("without a hint the flattest hull edge is used") {
    auto pts = uniform_disk(40000, 5);
    std::erase_if(pts, [](const Point2& p) { return p.y > 0.5; });
    const Flatness f = detect_flat_segment(pts, convex_hull(pts), std::nullopt);
    CHECK(f.fires);
    CHECK(f.normal.y == doctest::Approx(1.0).epsilon(1e-3));
  }
}
