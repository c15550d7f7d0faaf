#pragma once

// Boolean operations on regions bounded by segments and circular arcs.
//
// Every region handled here is an intersection of literals, where a literal
// is a simple closed shape (polygon or disk) or its complement. The boundary
// of such an intersection is found by splitting each literal's boundary at
// all crossings with the other literals and keeping the pieces whose
// midpoints satisfy every other literal. Pieces come out oriented with the
// region on their left, so Green's theorem integrates them directly.

#include <span>
#include <vector>

#include "smvd/geometry.hpp"

namespace smvd {

struct Box {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool overlaps(const Box& o, double slack) const {
    return xmin <= o.xmax + slack && o.xmin <= xmax + slack && ymin <= o.ymax + slack &&
           o.ymin <= ymax + slack;
  }
};

Box bounds(const Edge& e);

enum class Side { Inside, Outside, On };

/// A simple closed region: one counterclockwise boundary loop.
class Shape {
 public:
  static Shape polygon(const TaggedPolygon& poly);
  static Shape disk(const Disk& d, CurveTag tag);

  const std::vector<Edge>& boundary() const { return boundary_; }
  const Box& box() const { return box_; }
  bool is_disk() const { return is_disk_; }

  /// Classifies p; On when within eps of the boundary, in which case
  /// `tangent_out` receives the counterclockwise boundary tangent there.
  Side classify(Point p, double eps, Point* tangent_out = nullptr) const;

 private:
  std::vector<Edge> boundary_;
  std::vector<Box> edge_boxes_;
  Box box_;
  bool is_disk_ = false;
  Disk disk_;
};

struct Literal {
  const Shape* shape = nullptr;
  bool complement = false;
};

/// Oriented boundary pieces of the intersection of all literals.
std::vector<Edge> intersection_boundary(std::span<const Literal> literals, double eps);

/// Oriented boundary pieces of the union of the shapes.
std::vector<Edge> union_boundary(std::span<const Shape> shapes, double eps);

/// Chains oriented pieces into closed loops. Throws TopologyError when a
/// chain cannot be closed within `join_tol`.
std::vector<ArcSegBoundary> assemble_loops(std::vector<Edge> pieces, double join_tol);

/// Merges consecutive collinear segments carrying the same tag.
void merge_collinear(ArcSegBoundary& loop, double eps);

/// Total area enclosed by a set of loops (holes negative).
double loops_area(std::span<const ArcSegBoundary> loops);

}  // namespace smvd
