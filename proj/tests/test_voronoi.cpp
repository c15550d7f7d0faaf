#include <cmath>
#include <random>

#include "doctest.h"
#include "smvd/voronoi.hpp"

using namespace smvd;

namespace {

const ConvexPolygon kBox = ConvexPolygon::axis_box({-10, -10}, {10, 10});

Metric linf() { return Metric::polygonal({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }
Metric l1() { return Metric::polygonal({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

std::vector<Site> random_sites(int n, std::uint64_t seed, double spread = 8.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<Site> s;
  for (int i = 0; i < n; ++i) s.push_back({i, {u(rng), u(rng)}, 1.0});
  return s;
}

double symmetric_difference(const TaggedPolygon& a, const TaggedPolygon& b) {
  const Shape sa = Shape::polygon(a), sb = Shape::polygon(b);
  const std::vector<Literal> ab{{&sa, false}, {&sb, true}}, ba{{&sb, false}, {&sa, true}};
  return green_area(intersection_boundary(ab, 1e-9)) + green_area(intersection_boundary(ba, 1e-9));
}

}  // namespace

TEST_CASE("build examples") {
  const auto one = VoronoiDiagram::build(Metric::euclidean(), {{7, {1, 2}, 1.0}}, kBox);
  CHECK(one.cell(7).area() == doctest::Approx(400.0));

  const auto two = VoronoiDiagram::build(Metric::euclidean(), {{0, {0, 0}, 1}, {1, {2, 0}, 1}}, kBox);
  CHECK(two.cell(0).area() == doctest::Approx(220.0));
  CHECK(two.cell(1).area() == doctest::Approx(180.0));
  for (Point p : two.cell(0).vertices) CHECK(p.x <= 1.0 + 1e-12);

  std::vector<Site> tri;
  for (int k = 0; k < 3; ++k) tri.push_back({k, polar({0, 0}, 2.0, kPi / 2 + k * 2 * kPi / 3), 1});
  const auto eq = VoronoiDiagram::build(Metric::euclidean(), tri, kBox);
  for (int k = 0; k < 3; ++k) {
    bool has_center = false;
    for (Point p : eq.cell(k).vertices) has_center = has_center || norm(p) < 1e-12;
    CHECK(has_center);
  }
  // The wedge pointing up fills the top of the box above the two rays.
  // Top wedge bounded by rays at 30 and 150 degrees from the circumcenter.
  CHECK(eq.cell(0).area() == doctest::Approx(200.0 - 100.0 * std::tan(kPi / 6)).epsilon(1e-12));
  CHECK(eq.cell(1).area() == doctest::Approx(eq.cell(2).area()).epsilon(1e-12));

  CHECK_THROWS_AS(VoronoiDiagram::build(Metric::euclidean(), {{0, {0, 0}, 1}, {1, {0, 0}, 1}}, kBox), Error);
  CHECK_THROWS_AS(VoronoiDiagram::build(linf(), {{0, {0, 0}, 1}, {1, {2, 0}, 1}}, kBox), Error);
}

TEST_CASE("remove_site examples") {
  const auto two = VoronoiDiagram::build(Metric::euclidean(), {{0, {0, 0}, 1}, {1, {2, 0}, 1}}, kBox);
  const auto one = two.remove_site(1);
  CHECK(one.cell(0).area() == doctest::Approx(400.0));
  CHECK_FALSE(one.contains(1));
  CHECK(one.generation() == 1);
  try {
    one.cell(1);
    FAIL("expected UnknownSite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSite);
  }

  const auto three =
      VoronoiDiagram::build(Metric::euclidean(), {{0, {-2, 0}, 1}, {1, {0, 0}, 1}, {2, {2, 0}, 1}}, kBox);
  const auto outer = three.remove_site(1);
  CHECK(outer.cell(0).area() == doctest::Approx(200.0));
  for (Point p : outer.cell(2).vertices) CHECK(p.x >= -1e-12);
}

TEST_CASE("cells tile the box and contain their nearest points") {
  for (const Metric& m : {Metric::euclidean(), linf(), l1()}) {
    const auto sites = random_sites(m.is_euclidean() ? 40 : 12, 99);
    const auto v = VoronoiDiagram::build(m, sites, kBox);
    double total = 0.0;
    for (const Site& s : sites) {
      total += v.cell(s.id).area();
      CHECK(v.cell(s.id).contains(s.position));
    }
    CHECK(total == doctest::Approx(kBox.area()).epsilon(1e-9));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10, 10);
    int checked = 0;
    for (int k = 0; k < 100000; ++k) {
      const Point p{u(rng), u(rng)};
      double best = 1e300, second = 1e300;
      int owner = -1;
      for (const Site& s : sites) {
        const double d = m.distance(s.position, p);
        if (d < best) {
          second = best;
          best = d;
          owner = s.id;
        } else if (d < second) {
          second = d;
        }
      }
      if (second - best <= 1e-12) continue;
      ++checked;
      if (!v.cell(owner).contains(p)) FAIL_CHECK("point not in its nearest site's cell");
    }
    CHECK(checked > 99000);
  }
}

TEST_CASE("polygonal cells are star-shaped around their site") {
  for (const Metric& m : {linf(), l1()}) {
    const auto sites = random_sites(10, 5);
    const auto v = VoronoiDiagram::build(m, sites, kBox);
    for (const Site& s : sites) {
      const TaggedPolygon& c = v.cell(s.id);
      for (Point q : c.vertices)
        for (double t = 0.05; t < 1.0; t += 0.1) CHECK(c.contains(lerp(s.position, q, t), 1e-9));
    }
  }
}

TEST_CASE("remove_site equals rebuild") {
  for (const Metric& m : {Metric::euclidean(), linf()}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      auto sites = random_sites(10, seed);
      auto v = VoronoiDiagram::build(m, sites, kBox);
      for (int removed = 0; removed < 5; ++removed) {
        const int id = sites[static_cast<std::size_t>(seed + removed) % sites.size()].id;
        v = v.remove_site(id);
        std::erase_if(sites, [&](const Site& s) { return s.id == id; });
        const auto fresh = VoronoiDiagram::build(m, sites, kBox);
        for (const Site& s : sites) {
          CHECK(v.cell(s.id).area() == doctest::Approx(fresh.cell(s.id).area()).epsilon(1e-9));
          CHECK(symmetric_difference(v.cell(s.id), fresh.cell(s.id)) < 1e-9 * kBox.area());
        }
      }
    }
  }
}

TEST_CASE("serial and parallel builds agree") {
  const auto sites = random_sites(60, 3);
  VoronoiOptions serial;
  serial.parallel = false;
  const auto a = VoronoiDiagram::build(Metric::euclidean(), sites, kBox, serial);
  const auto b = VoronoiDiagram::build(Metric::euclidean(), sites, kBox);
  for (const Site& s : sites) CHECK(a.cell(s.id).vertices == b.cell(s.id).vertices);
}
