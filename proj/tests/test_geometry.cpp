#include <cmath>
#include <random>

#include "doctest.h"
#include "smvd/geometry.hpp"

using namespace smvd;

namespace {

ArcSegBoundary circle(Point c, double r) {
  return {{Edge{Arc{c, r, 0.0, kTwoPi}, {}}}, true};
}

ArcSegBoundary polygon(std::vector<Point> v) {
  ArcSegBoundary b;
  for (std::size_t i = 0; i < v.size(); ++i) b.elements.push_back({Segment{v[i], v[(i + 1) % v.size()]}, {}});
  return b;
}

ArcSegBoundary half_disk() {
  // Diameter from (1,0) to (-1,0) along the x axis, then the upper arc back... as
  // a CCW loop: segment (-1,0)->(1,0), arc from angle 0 to pi.
  ArcSegBoundary b;
  b.elements.push_back({Segment{{-1, 0}, {1, 0}}, {}});
  b.elements.push_back({Arc{{0, 0}, 1.0, 0.0, kPi}, {}});
  return b;
}

ArcSegBoundary reverse(const ArcSegBoundary& b) {
  ArcSegBoundary r;
  for (auto it = b.elements.rbegin(); it != b.elements.rend(); ++it) r.elements.push_back(reversed(*it));
  return r;
}

}  // namespace

TEST_CASE("signed_area examples") {
  CHECK(signed_area(circle({3, -1}, 2.0)) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(signed_area(polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(signed_area(half_disk()) == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("signed_area errors") {
  ArcSegBoundary open = polygon({{0, 0}, {1, 0}, {1, 1}});
  open.closed = false;
  CHECK_THROWS_AS(signed_area(open), Error);
  ArcSegBoundary gap;
  gap.elements.push_back({Segment{{0, 0}, {1, 0}}, {}});
  gap.elements.push_back({Segment{{1, 0}, {1, 1}}, {}});
  gap.elements.push_back({Segment{{1, 1}, {0, 0.5}}, {}});
  try {
    signed_area(gap);
    FAIL("expected OpenBoundary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OpenBoundary);
  }
  // Bow tie.
  const ArcSegBoundary bow = polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
  CHECK_NOTHROW(signed_area(bow));
  try {
    signed_area(bow, true);
    FAIL("expected SelfIntersecting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfIntersecting);
  }
  CHECK_NOTHROW(signed_area(half_disk(), true));
}

TEST_CASE("signed_area is orientation antisymmetric") {
  for (const ArcSegBoundary& b : {circle({1, 2}, 0.7), half_disk(), polygon({{0, 0}, {2, 0}, {1, 3}})})
    CHECK(signed_area(reverse(b)) == doctest::Approx(-signed_area(b)).epsilon(1e-14));
}

TEST_CASE("signed_area matches Monte Carlo within 3 sigma") {
  // Crescent-like loop: unit half-disk plus a triangle on the diameter.
  std::vector<ArcSegBoundary> shapes{half_disk(), circle({0.2, 0.1}, 0.8),
                                     polygon({{-1, -1}, {1, -1}, {0.3, 0.2}, {-1, 1}})};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (const auto& b : shapes) {
    const std::vector<ArcSegBoundary> loops{b};
    const int samples = 1'000'000;
    int hits = 0;
    for (int i = 0; i < samples; ++i)
      if (winding_number(loops, {u(rng), u(rng)}) != 0) ++hits;
    const double box = 2.4 * 2.4;
    const double p = static_cast<double>(hits) / samples;
    const double est = p * box;
    const double sigma = box * std::sqrt(p * (1 - p) / samples);
    CHECK(std::abs(est - signed_area(b)) <= 3.0 * sigma);
  }
}

TEST_CASE("polygon_disk_intersection_area examples") {
  const ConvexPolygon sq = ConvexPolygon::axis_box({-0.5, -0.5}, {0.5, 0.5});
  CHECK(polygon_disk_intersection_area(sq, Disk({0, 0}, 10)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(polygon_disk_intersection_area(sq, Disk({0, 0}, 0.25)) == doctest::Approx(kPi / 16).epsilon(1e-14));
  const ConvexPolygon unit = ConvexPolygon::axis_box({0, 0}, {1, 1});
  CHECK(polygon_disk_intersection_area(unit, Disk({0, 0.5}, 0.3)) == doctest::Approx(0.09 * kPi / 2).epsilon(1e-14));
  CHECK(polygon_disk_intersection_area(unit, Disk({5, 5}, 0.3)) == 0.0);
}

TEST_CASE("polygon_disk_intersection_area is monotone and clamped") {
  const ConvexPolygon tri({{0, 0}, {3, 0.5}, {1, 2}});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 4);
  for (int k = 0; k < 50; ++k) {
    const Point c{u(rng), u(rng)};
    double prev = 0.0;
    for (double r = 0.0; r < 6.0; r += 0.05) {
      const double a = polygon_disk_intersection_area(tri, Disk(c, r));
      CHECK(a >= prev - 1e-12);
      CHECK(a <= std::min(tri.area(), kPi * r * r) + 1e-12);
      prev = a;
    }
  }
}

TEST_CASE("circle_circle_intersections examples") {
  CHECK(circle_circle_intersections(Disk({0, 0}, 1), Disk({3, 0}, 1)).empty());
  const auto t = circle_circle_intersections(Disk({0, 0}, 1), Disk({2, 0}, 1));
  REQUIRE(t.size() == 1);
  CHECK(t[0].x == doctest::Approx(1.0));
  CHECK(std::abs(t[0].y) < 1e-12);
  const auto two = circle_circle_intersections(Disk({0, 0}, 1), Disk({1, 0}, 1));
  REQUIRE(two.size() == 2);
  for (Point p : two) {
    CHECK(p.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(p.y) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  }
  try {
    circle_circle_intersections(Disk({1, 1}, 2), Disk({1, 1}, 2));
    FAIL("expected CoincidentCircles");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentCircles);
  }
}

TEST_CASE("circle_circle_intersections residual on random pairs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5), r(0.1, 4);
  for (int k = 0; k < 10000; ++k) {
    const Disk a({u(rng), u(rng)}, r(rng)), b({u(rng), u(rng)}, r(rng));
    for (Point p : circle_circle_intersections(a, b)) {
      CHECK(std::abs(dist(p, a.center) - a.radius) <= 1e-12);
      CHECK(std::abs(dist(p, b.center) - b.radius) <= 1e-12);
    }
  }
}

TEST_CASE("clip_convex_by_halfplanes examples") {
  const ConvexPolygon unit = ConvexPolygon::axis_box({0, 0}, {1, 1});
  const auto same = clip_convex_by_halfplanes({}, unit);
  REQUIRE(same);
  CHECK(same->area() == doctest::Approx(1.0));

  const HalfPlane left({1, 0}, 0.5);
  const std::vector<HalfPlane> one{left};
  const auto half = clip_convex_by_halfplanes(one, unit);
  REQUIRE(half);
  CHECK(half->area() == doctest::Approx(0.5));
  for (Point p : half->vertices) CHECK(p.x <= 0.5 + 1e-15);

  const std::vector<HalfPlane> contradiction{HalfPlane({1, 0}, 0.0), HalfPlane({-1, 0}, -1.0)};
  CHECK_FALSE(clip_convex_by_halfplanes(contradiction, unit).has_value());
}

TEST_CASE("invalid inputs are rejected at construction") {
  CHECK_THROWS_AS(Point(std::nan(""), 0.0), Error);
  CHECK_THROWS_AS(Disk({0, 0}, -1.0), Error);
  CHECK_THROWS_AS(HalfPlane({1, 1}, 0.0), Error);
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), Error);  // clockwise
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.1}, {2, 2}, {0, 2}}), Error);
}

TEST_CASE("winding number of arc loops") {
  const std::vector<ArcSegBoundary> loops{circle({0, 0}, 1.0), reverse(circle({0, 0}, 0.5))};
  CHECK(winding_number(loops, {0.75, 0.0}) == 1);
  CHECK(winding_number(loops, {0.1, 0.1}) == 0);
  CHECK(winding_number(loops, {0.0, 0.99}) == 1);
  CHECK(winding_number(loops, {2.0, 0.0}) == 0);
}
