#pragma once

// Incremental construction of the stable-matching Voronoi diagram: at each
// iteration every unordered site gets an estimate radius, the smallest one
// is committed as that site's bounding ball, the part of the ball not yet
// claimed is split among the current Voronoi cells, and the site leaves the
// Voronoi diagram. A final glue pass turns the per-site edge sets into faces.

#include <limits>
#include <optional>
#include <vector>

#include "smvd/primitive.hpp"
#include "smvd/region_algebra.hpp"
#include "smvd/voronoi.hpp"

namespace smvd {

inline constexpr int kUnmatched = -1;

struct SolverConfig {
  Tolerances tol;
  double bbox_scale = 1.1;  // safety factor on the provable working-box size
  bool parallel = true;
  int threads = 0;  // 0: OpenMP default
  bool allow_degenerate_bisectors = false;
  std::optional<ConvexPolygon> bbox;  // overrides the computed working box
};

struct EstimateRecord {
  int iteration = 0;  // 1-based
  int site = 0;
  double radius = 0.0;  // +inf when the primitive has no solution
};

struct PartialDiagram {
  int iteration = 0;
  Metric metric;
  ConvexPolygon bbox;
  double scale = 1.0;  // working-box half width
  SolverConfig config;
  std::vector<Site> sites;
  std::vector<std::vector<Edge>> edges;  // E(s), unordered, per site index
  std::vector<double> assigned;
  std::vector<double> remaining;
  std::vector<double> radius;  // r*(s) once ordered, +inf before
  std::vector<int> order;      // site ids s_1 .. s_i
  BallUnion committed;
  std::optional<VoronoiDiagram> voronoi;  // diagram of the unordered sites
  std::vector<EstimateRecord> estimates;
  long primitive_calls = 0;

  std::size_t index_of(int id) const;
  bool done() const { return order.size() == sites.size(); }
};

struct SiteRegion {
  int id = 0;
  Point position;
  double appetite = 0.0;
  int order = 0;  // 1-based position in the ordering
  double radius = 0.0;
  double area = 0.0;
  std::vector<ArcSegBoundary> loops;  // outer loops CCW, holes CW
};

struct Counts {
  long faces = 0;
  long edges = 0;
  long vertices = 0;
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct SolveStats {
  long primitive_calls = 0;
  double wall_seconds = 0.0;
  int iterations = 0;
};

struct StableDiagram {
  Metric metric;
  ConvexPolygon bbox;
  Tolerances tol;
  std::vector<SiteRegion> regions;  // in input order
  Counts counts;
  SolveStats stats;

  const SiteRegion& region(int id) const;
};

/// Working box that contains every bounding ball.
ConvexPolygon working_bbox(const std::vector<Site>& sites, const Metric& m, double scale);

PartialDiagram initial_state(const std::vector<Site>& sites, const Metric& m, const SolverConfig& cfg = {});

/// r†_i(s): primitive on (V_{i..n}(s), s, A_i(s), committed balls), +inf on
/// no solution. A site with no remaining appetite gets the distance to its
/// farthest assigned point.
double estimate_radius(const PartialDiagram& state, int id);

/// One iteration. Throws InfeasibleState when every estimate is infinite.
PartialDiagram step(PartialDiagram state);

/// Faces from the per-site edge sets. Throws TopologyError when fragments do
/// not close within 10 eps_join.
StableDiagram glue(const PartialDiagram& state);

StableDiagram solve(const std::vector<Site>& sites, const Metric& m, const SolverConfig& cfg = {});

struct Classification {
  int site = kUnmatched;
  bool ambiguous = false;  // within eps_join of a tie or of a bounding ball
};

/// Nearest site among those with d(s, p) < r*(s), else kUnmatched.
Classification classify_point(const StableDiagram& d, Point p);

/// Faces (outer loops), edges and vertices. A full circle is one edge with no
/// vertex.
Counts count_complexity(const StableDiagram& d);

/// Site on the right of an element at parameter t, found by classifying a
/// point just off the curve.
int right_owner(const StableDiagram& d, const Edge& e, double t = 0.5);

/// Farthest distance from `center` to a point of the edges.
double farthest_distance(const Metric& m, Point center, std::span<const Edge> edges);

}  // namespace smvd
