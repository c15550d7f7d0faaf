#pragma once

// Distance functions: Euclidean, or a polygonal convex distance function d_S
// whose unit ball S is a convex polygon symmetric about the origin.

#include <optional>
#include <vector>

#include "smvd/boolean.hpp"
#include "smvd/geometry.hpp"

namespace smvd {

enum class MetricKind { Euclidean, Polygonal };

class Metric {
 public:
  Metric() = default;
  static Metric euclidean();
  /// Normalizes the unit ball: CCW order, symmetric pairs averaged when they
  /// match within eps_join. Throws InvalidInput otherwise.
  static Metric polygonal(std::vector<Point> unit_ball, const Tolerances& tol = {});

  MetricKind kind() const { return kind_; }
  bool is_euclidean() const { return kind_ == MetricKind::Euclidean; }
  const ConvexPolygon& unit_ball() const { return ball_; }

  /// d(a, b): Euclidean norm, or the factor by which S must be scaled around
  /// a to reach b (found by casting the ray a -> b against S).
  double distance(Point a, Point b) const;

  /// Directions from the origin through each unit-ball vertex, CCW.
  std::vector<Point> spokes() const;

  /// Number of facets (unit-ball edges); facet k runs from vertex k to k+1.
  std::size_t facet_count() const { return normals_.size(); }
  Point facet_normal(std::size_t k) const { return normals_[k]; }
  double facet_offset(std::size_t k) const { return offsets_[k]; }
  /// Facet hit by the ray from the origin in direction u (u != 0).
  std::size_t facet_of(Point u) const;

  /// Area of the ball of radius (scale) r.
  double ball_area(double r) const;
  /// Largest Euclidean distance from the center to a point of the unit ball.
  double ball_extent() const;
  TaggedPolygon ball_polygon(Point center, double r, CurveTag tag) const;
  Shape ball_shape(Point center, double r, CurveTag tag) const;

  friend bool operator==(const Metric& a, const Metric& b) {
    return a.kind_ == b.kind_ && a.ball_.vertices == b.ball_.vertices;
  }

 private:
  MetricKind kind_ = MetricKind::Euclidean;
  ConvexPolygon ball_;
  std::vector<double> angles_;  // vertex angles, ascending from angles_[0]
  std::vector<Point> normals_;
  std::vector<double> offsets_;
};

/// Dominance region of s over t inside a working box, with its boundary.
struct Bisector {
  std::optional<HalfPlane> half_plane;  // Euclidean only
  TaggedPolygon dominance;              // { p in bbox : d(p,s) <= d(p,t) }
  std::vector<Segment> polyline;        // boundary pieces with d(p,s) = d(p,t)
};

struct BisectorOptions {
  /// Resolve two-dimensional ties (s - t parallel to a unit-ball edge) by
  /// giving each tie region to the site it lies left of, instead of failing.
  bool allow_degenerate = false;
  double eps = 1e-9;
};

/// Throws DegenerateBisector for polygonal metrics when s - t is parallel to
/// a unit-ball edge (unless allowed), InvalidInput when s == t.
Bisector bisector(const Metric& m, Point s, Point t, const ConvexPolygon& bbox, int s_id = 0,
                  int t_id = 1, const BisectorOptions& opt = {});

}  // namespace smvd
