#pragma once

// Union of committed balls, carving a new ball against it, and splitting the
// carved region by a Voronoi diagram.

#include <map>
#include <memory>
#include <vector>

#include "smvd/voronoi.hpp"

namespace smvd {

struct Ball {
  Point center;
  double scale = 0.0;
  int site = -1;  // owner id; also the curve tag of the boundary
};

class BallUnion {
 public:
  explicit BallUnion(Metric m = Metric::euclidean(), double eps = 1e-9) : metric_(std::move(m)), eps_(eps) {}

  /// New union including b. Throws MetricMismatch when `m` differs.
  BallUnion add_ball(const Ball& b, const Metric& m) const;
  BallUnion add_ball(const Ball& b) const { return add_ball(b, metric_); }

  const Metric& metric() const { return metric_; }
  const std::vector<Ball>& balls() const { return balls_; }
  const std::vector<std::shared_ptr<const Shape>>& shapes() const { return shapes_; }
  /// Outer loops counterclockwise, holes clockwise.
  const std::vector<ArcSegBoundary>& boundary() const { return loops_; }
  double area() const { return area_; }
  /// Balls whose bounding box meets `box`.
  std::vector<const Shape*> overlapping(const Box& box) const;

 private:
  Metric metric_;
  double eps_;
  std::vector<Ball> balls_;
  std::vector<std::shared_ptr<const Shape>> shapes_;
  std::vector<ArcSegBoundary> loops_;
  double area_ = 0.0;
};

struct CarvedRegion {
  std::vector<ArcSegBoundary> faces;
  std::vector<int> parent;  // containing loop index, -1 at top level
  std::shared_ptr<const Shape> ball;
  std::vector<const Shape*> obstructions;  // owned by the BallUnion it was carved from
  double area = 0.0;

  bool empty() const { return faces.empty(); }
};

/// b minus u. The result refers to shapes owned by u, which must outlive it.
CarvedRegion carve(const Ball& b, const BallUnion& u, const Metric& m);

struct RegionPiece {
  std::vector<Edge> edges;  // oriented, region on the left
  std::vector<ArcSegBoundary> loops;
  double area = 0.0;
};

struct PartitionOptions {
  bool parallel = true;
  bool assemble = true;
  double eps = 1e-9;
};

/// Pieces of the region inside each Voronoi cell; sites with empty pieces
/// are omitted.
std::map<int, RegionPiece> partition_by_voronoi(const CarvedRegion& r, const VoronoiDiagram& v,
                                                const PartitionOptions& opt = {});

/// Intersection of a cell with a ball and the complements of obstructions.
RegionPiece clip_region(const Shape& cell, const Shape& ball, std::span<const Shape* const> obstructions,
                        double eps, bool assemble);

/// Parent of each loop in the containment order (-1 for none).
std::vector<int> containment_tree(const std::vector<ArcSegBoundary>& loops);

}  // namespace smvd
