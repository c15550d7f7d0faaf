#include <cmath>
#include <random>

#include "doctest.h"
#include "smvd/boolean.hpp"

using namespace smvd;

TEST_CASE("intersection of disk and square") {
  const Shape sq = Shape::polygon(TaggedPolygon::from_convex(ConvexPolygon::axis_box({0, 0}, {1, 1})));
  const Shape d = Shape::disk(Disk({0, 0.5}, 0.3), CurveTag::ball(0));
  const std::vector<Literal> lits{{&sq, false}, {&d, false}};
  const auto pieces = intersection_boundary(lits, 1e-9);
  CHECK(green_area(pieces) == doctest::Approx(0.09 * kPi / 2).epsilon(1e-13));
  const auto loops = assemble_loops(pieces, 1e-9);
  CHECK(loops.size() == 1);
}

TEST_CASE("union and difference of two unit disks") {
  const std::vector<Shape> disks{Shape::disk(Disk({0, 0}, 1), CurveTag::ball(0)),
                                 Shape::disk(Disk({1, 0}, 1), CurveTag::ball(1))};
  const double lens = 2.0 * (kPi / 3.0 - std::sqrt(3.0) / 4.0);
  const auto u = union_boundary(disks, 1e-9);
  CHECK(green_area(u) == doctest::Approx(2 * kPi - lens).epsilon(1e-13));
  CHECK(assemble_loops(u, 1e-9).size() == 1);

  const std::vector<Literal> diff{{&disks[0], false}, {&disks[1], true}};
  CHECK(green_area(intersection_boundary(diff, 1e-9)) == doctest::Approx(kPi - lens).epsilon(1e-13));
}

TEST_CASE("coincident boundaries") {
  // Two squares sharing an edge: union is the rectangle, intersection empty.
  const Shape a = Shape::polygon(TaggedPolygon::from_convex(ConvexPolygon::axis_box({0, 0}, {1, 1})));
  const Shape b = Shape::polygon(TaggedPolygon::from_convex(ConvexPolygon::axis_box({1, 0}, {2, 1})));
  const std::vector<Shape> both{a, b};
  const auto u = union_boundary(both, 1e-9);
  CHECK(green_area(u) == doctest::Approx(2.0));
  auto loops = assemble_loops(u, 1e-9);
  REQUIRE(loops.size() == 1);
  merge_collinear(loops[0], 1e-9);
  CHECK(loops[0].elements.size() == 4);

  const std::vector<Literal> inter{{&a, false}, {&b, false}};
  CHECK(std::abs(green_area(intersection_boundary(inter, 1e-9))) < 1e-15);

  // Same square twice keeps a single copy of the boundary.
  const std::vector<Literal> twice{{&a, false}, {&a, false}};
  CHECK(green_area(intersection_boundary(twice, 1e-9)) == doctest::Approx(1.0));
}

TEST_CASE("random disk unions match inclusion-exclusion by sampling") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2), r(0.3, 1.2);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Shape> shapes;
    std::vector<Disk> disks;
    for (int k = 0; k < 6; ++k) {
      disks.emplace_back(Point{u(rng), u(rng)}, r(rng));
      shapes.push_back(Shape::disk(disks.back(), CurveTag::ball(k)));
    }
    const auto pieces = union_boundary(shapes, 1e-9);
    const auto loops = assemble_loops(pieces, 1e-9);
    const int n = 400000;
    int hits = 0;
    std::uniform_real_distribution<double> box(-3.5, 3.5);
    for (int i = 0; i < n; ++i) {
      const Point p{box(rng), box(rng)};
      bool in = false;
      for (const Disk& d : disks) in = in || dist(p, d.center) <= d.radius;
      hits += in;
      CHECK((winding_number(loops, p) != 0) == in);
    }
    const double pr = static_cast<double>(hits) / n;
    const double est = pr * 49.0, sigma = 49.0 * std::sqrt(pr * (1 - pr) / n);
    CHECK(std::abs(est - green_area(pieces)) <= 3 * sigma);
    // Linear complexity sanity bound.
    std::size_t elements = 0;
    for (const auto& l : loops) elements += l.elements.size();
    CHECK(elements <= 6 * disks.size());
  }
}
