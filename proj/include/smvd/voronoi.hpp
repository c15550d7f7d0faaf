#pragma once

// Standard (first-order) Voronoi diagrams clipped to a working box.

#include <map>
#include <memory>
#include <vector>

#include "smvd/metric.hpp"

namespace smvd {

struct Site {
  int id = 0;
  Point position;
  double appetite = 1.0;
};

struct VoronoiOptions {
  bool parallel = true;
  BisectorOptions bisector;
};

class VoronoiDiagram {
 public:
  /// Cell of s = bbox intersected with the dominance regions of s over every
  /// other site. Throws DuplicateSites, DegenerateBisector, InvalidInput.
  static VoronoiDiagram build(const Metric& m, std::vector<Site> sites, const ConvexPolygon& bbox,
                              const VoronoiOptions& opt = {});

  /// Diagram without `id`; only the cells that bordered it are recomputed.
  VoronoiDiagram remove_site(int id) const;

  const TaggedPolygon& cell(int id) const;
  bool contains(int id) const;
  /// Nearest site to p (lowest id on ties).
  int nearest(Point p) const;

  const Metric& metric() const { return metric_; }
  const ConvexPolygon& bbox() const { return bbox_; }
  const std::vector<Site>& sites() const { return sites_; }
  int generation() const { return generation_; }

 private:
  using DominanceCache = std::map<std::pair<int, int>, TaggedPolygon>;

  std::size_t index_of(int id) const;
  TaggedPolygon compute_cell(std::size_t idx) const;
  const TaggedPolygon& dominance(std::size_t s, std::size_t t) const;

  Metric metric_;
  ConvexPolygon bbox_;
  std::vector<Site> sites_;
  std::vector<TaggedPolygon> cells_;
  int generation_ = 0;
  VoronoiOptions opt_;
  std::shared_ptr<const DominanceCache> dom_;
};

}  // namespace smvd
