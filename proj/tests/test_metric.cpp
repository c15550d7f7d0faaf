#include <cmath>
#include <random>

#include "doctest.h"
#include "smvd/metric.hpp"

using namespace smvd;

namespace {

Metric linf() { return Metric::polygonal({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }
Metric l1() { return Metric::polygonal({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
Metric hexagon() {
  std::vector<Point> v;
  for (int k = 0; k < 6; ++k) v.push_back(polar({0, 0}, 1.0, k * kPi / 3.0));
  return Metric::polygonal(v);
}

// Gauge function of the unit ball written as a max over facets.
double gauge_oracle(const Metric& m, Point a, Point b) {
  const auto& v = m.unit_ball().vertices;
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point p = v[k], q = v[(k + 1) % v.size()];
    const Point n{q.y - p.y, p.x - q.x};
    best = std::max(best, dot(n, b - a) / dot(n, p));
  }
  return best;
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(Metric::euclidean().distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(linf().distance({0, 0}, {3, 4}) == doctest::Approx(4.0));
  CHECK(l1().distance({0, 0}, {3, 4}) == doctest::Approx(7.0));
  CHECK(l1().distance({1, 1}, {1, 1}) == 0.0);
}

TEST_CASE("spokes") {
  CHECK_THROWS_AS(Metric::euclidean().spokes(), Error);
  const auto sq = linf().spokes();
  REQUIRE(sq.size() == 4);
  for (Point d : sq) {
    CHECK(std::abs(std::abs(d.x) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(std::abs(d.y) - std::sqrt(0.5)) < 1e-15);
  }
  const auto dia = l1().spokes();
  REQUIRE(dia.size() == 4);
  for (Point d : dia) CHECK(std::abs(std::abs(d.x) + std::abs(d.y) - 1.0) < 1e-15);
  const auto hex = hexagon().spokes();
  REQUIRE(hex.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const Point a = hex[k], b = hex[(k + 1) % 6];
    CHECK(std::acos(dot(a, b)) == doctest::Approx(kPi / 3));
    CHECK(cross(a, b) > 0.0);
  }
}

TEST_CASE("unit ball normalization") {
  // Clockwise, shuffled, slightly asymmetric input is accepted and averaged.
  const Metric m = Metric::polygonal({{1, -1}, {-1, 1 + 1e-11}, {1, 1}, {-1, -1}});
  CHECK(m.unit_ball().area() == doctest::Approx(4.0));
  for (Point v : m.unit_ball().vertices) {
    bool found = false;
    for (Point w : m.unit_ball().vertices) found = found || (v + w == Point{0, 0});
    CHECK(found);
  }
  CHECK_THROWS_AS(Metric::polygonal({{2, 0}, {0, 1}, {-1, 0}, {0, -1}}), Error);
  CHECK_THROWS_AS(Metric::polygonal({{1, 0}, {0, 1}, {-1, 0}}), Error);
}

TEST_CASE("distance properties on random triples") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-10, 10);
  const std::vector<Metric> metrics{Metric::euclidean(), linf(), l1(), hexagon()};
  for (const Metric& m : metrics) {
    for (int k = 0; k < 100000; ++k) {
      const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
      const double ab = m.distance(a, b), bc = m.distance(b, c), ac = m.distance(a, c);
      CHECK(ac <= ab + bc + 1e-12);
      CHECK(ab == doctest::Approx(m.distance(b, a)).epsilon(1e-13));
      if (!m.is_euclidean() && k % 10 == 0) CHECK(ab == doctest::Approx(gauge_oracle(m, a, b)).epsilon(1e-13));
    }
  }
}

TEST_CASE("ball membership matches distance") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const Metric& m : {linf(), l1(), hexagon()}) {
    const Point c{0.3, -0.2};
    const double r = 1.7;
    const Shape ball = m.ball_shape(c, r, CurveTag::ball(0));
    CHECK(m.ball_area(r) == doctest::Approx(m.ball_polygon(c, r, {}).area()));
    for (int k = 0; k < 20000; ++k) {
      const Point p{u(rng), u(rng)};
      const double d = m.distance(c, p);
      if (std::abs(d - r) < 1e-9) continue;
      CHECK((ball.classify(p, 0.0) == Side::Inside) == (d < r));
    }
  }
}

TEST_CASE("Euclidean bisector is the perpendicular bisector half-plane") {
  const ConvexPolygon box = ConvexPolygon::axis_box({-10, -10}, {10, 10});
  const Bisector b = bisector(Metric::euclidean(), {0, 0}, {2, 0}, box);
  REQUIRE(b.half_plane);
  CHECK(b.half_plane->normal.x == doctest::Approx(1.0));
  CHECK(b.half_plane->offset == doctest::Approx(1.0));
  CHECK(b.dominance.area() == doctest::Approx(220.0));
  REQUIRE(b.polyline.size() == 1);
  CHECK(b.polyline[0].a.x == doctest::Approx(1.0));
}

TEST_CASE("polygonal bisectors are equidistant and complementary") {
  const ConvexPolygon box = ConvexPolygon::axis_box({-20, -20}, {20, 20});
  struct Case {
    Metric m;
    Point s, t;
  };
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5), w(0, 1);
  std::vector<Case> cases{{linf(), {0, 0}, {2, 2}}, {l1(), {0, 0}, {4, 0}}, {hexagon(), {0.5, 0}, {-1, 1.7}}};
  for (int k = 0; k < 10; ++k) cases.push_back({k % 2 ? linf() : l1(), {u(rng), u(rng)}, {u(rng), u(rng)}});
  for (const Case& c : cases) {
    const Bisector st = bisector(c.m, c.s, c.t, box, 0, 1);
    const Bisector ts = bisector(c.m, c.t, c.s, box, 1, 0);
    CHECK(st.dominance.area() + ts.dominance.area() == doctest::Approx(box.area()).epsilon(1e-12));
    CHECK(st.dominance.contains(c.s));
    CHECK_FALSE(st.dominance.contains(c.t));
    REQUIRE_FALSE(st.polyline.empty());
    double total = 0.0;
    for (const Segment& seg : st.polyline) total += dist(seg.a, seg.b);
    for (int k = 0; k < 1000; ++k) {
      // Sample boundary points uniformly by length.
      double x = w(rng) * total;
      for (const Segment& seg : st.polyline) {
        const double l = dist(seg.a, seg.b);
        if (x <= l) {
          const Point q = lerp(seg.a, seg.b, x / l);
          CHECK(std::abs(c.m.distance(q, c.s) - c.m.distance(q, c.t)) <= 1e-9);
          break;
        }
        x -= l;
      }
    }
  }
}

TEST_CASE("L1 bisector contains the vertical segment x = 2 near the axis") {
  const ConvexPolygon box = ConvexPolygon::axis_box({-20, -20}, {20, 20});
  const Bisector b = bisector(l1(), {0, 0}, {4, 0}, box);
  bool found = false;
  for (const Segment& s : b.polyline)
    if (std::abs(s.a.x - 2) < 1e-12 && std::abs(s.b.x - 2) < 1e-12 && std::min(s.a.y, s.b.y) <= 0 &&
        std::max(s.a.y, s.b.y) >= 0)
      found = true;
  CHECK(found);
}

TEST_CASE("degenerate polygonal bisectors") {
  const ConvexPolygon box = ConvexPolygon::axis_box({-20, -20}, {20, 20});
  try {
    bisector(linf(), {0, 0}, {2, 0}, box);
    FAIL("expected DegenerateBisector");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateBisector);
  }
  BisectorOptions opt;
  opt.allow_degenerate = true;
  const Bisector st = bisector(linf(), {0, 0}, {2, 0}, box, 0, 1, opt);
  const Bisector ts = bisector(linf(), {2, 0}, {0, 0}, box, 1, 0, opt);
  CHECK(st.dominance.area() + ts.dominance.area() == doctest::Approx(box.area()));
  CHECK(st.dominance.contains({1, 10}));   // left of s -> t
  CHECK(ts.dominance.contains({1, -10}));  // left of t -> s
}
