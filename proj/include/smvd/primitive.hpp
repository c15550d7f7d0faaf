#pragma once

// The geometric primitive: given a cell P, a site s, an appetite A and a set
// C of obstruction balls, find the radius (or scale) r with
// area((P \ C) ∩ Ball(s, r)) = A.

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "smvd/metric.hpp"

namespace smvd {

struct PrimitiveQuery {
  const Metric* metric = nullptr;
  TaggedPolygon cell;  // convex for Euclidean, star-shaped around `site` otherwise
  Point site;
  double appetite = 0.0;
  std::vector<const Shape*> obstructions;  // not owned
};

enum class PrimitiveStatus { Solved, NoSolution };

struct PrimitiveAnswer {
  double radius = std::numeric_limits<double>::infinity();
  double achieved_area = 0.0;
  PrimitiveStatus status = PrimitiveStatus::NoSolution;
  int evaluations = 0;
};

struct PrimitiveOptions {
  double eps_area_rel = 1e-9;  // |area - A| tolerance relative to A
  double eps_radius = 1e-10;   // absolute bracket width
  double eps = 1e-9;           // geometric join tolerance
};

/// Exact area of (cell \ ∪C) ∩ Ball(site, r). If `moving_length` is given it
/// receives the length of the ball boundary kept in the region (the
/// derivative in r for the Euclidean metric).
double area_at_radius(const PrimitiveQuery& q, double r, double* moving_length = nullptr);

/// Area of cell \ ∪C, the largest area any radius can reach.
double available_area(const PrimitiveQuery& q);

/// Newton steps safeguarded by a bisection bracket on [0, r_hi], with r_hi the
/// farthest cell vertex.
PrimitiveAnswer solve_euclidean(const PrimitiveQuery& q, const PrimitiveOptions& opt = {});

/// Exact pipeline: triangulate P \ C, split along the spokes, bracket the
/// answer between consecutive vertex distances, solve a quadratic.
PrimitiveAnswer solve_polygonal(const PrimitiveQuery& q, const PrimitiveOptions& opt = {});

PrimitiveAnswer solve_primitive(const PrimitiveQuery& q, const PrimitiveOptions& opt = {});

using Triangle = std::array<Point, 3>;

/// Triangulates the region bounded by oriented segment pieces with vertical
/// slabs: every piece endpoint starts a slab, and each gap between
/// consecutive pieces inside a slab that satisfies `inside` becomes a
/// trapezoid split into two triangles.
template <class Inside>
std::vector<Triangle> slab_triangulation(std::span<const Segment> pieces, Inside&& inside);

namespace detail {
std::vector<Triangle> slab_triangulation_impl(std::span<const Segment> pieces,
                                              bool (*inside)(const void*, Point), const void* ctx);
}

template <class Inside>
std::vector<Triangle> slab_triangulation(std::span<const Segment> pieces, Inside&& inside) {
  using F = std::remove_reference_t<Inside>;
  return detail::slab_triangulation_impl(
      pieces, [](const void* c, Point p) { return (*static_cast<const F*>(c))(p); }, &inside);
}

}  // namespace smvd
