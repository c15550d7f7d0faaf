#pragma once

// Low-level planar geometry: points, disks, half-planes, convex polygons and
// closed boundaries made of line segments and circular arcs.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "smvd/error.hpp"
#include "smvd/tolerances.hpp"

namespace smvd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {
    if (!std::isfinite(px) || !std::isfinite(py)) [[unlikely]]
      throw Error(ErrorCode::InvalidInput, "non-finite point coordinate");
  }

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(Point a) { return {-a.x, -a.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }
inline Point perp(Point a) { return {-a.y, a.x}; }  // CCW rotation by 90 degrees
inline Point polar(Point c, double r, double angle) {
  return {c.x + r * std::cos(angle), c.y + r * std::sin(angle)};
}

/// Normalizes an angle to [0, 2pi).
double wrap_angle(double a);

struct Disk {
  Point center;
  double radius = 0.0;

  Disk() = default;
  Disk(Point c, double r) : center(c), radius(r) {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw Error(ErrorCode::InvalidInput, "disk radius must be finite and nonnegative");
  }
};

/// The closed half-plane { p : normal . p <= offset } with a unit normal.
struct HalfPlane {
  Point normal;
  double offset = 0.0;

  HalfPlane() = default;
  HalfPlane(Point n, double off, const Tolerances& tol = {});

  /// Half-plane of points at least as close to `keep` as to `other`.
  static HalfPlane closer_to(Point keep, Point other);

  double signed_distance(Point p) const { return dot(normal, p) - offset; }
  bool contains(Point p, double slack = 0.0) const { return signed_distance(p) <= slack; }
};

struct ConvexPolygon {
  std::vector<Point> vertices;  // counterclockwise

  ConvexPolygon() = default;
  /// Validates: at least 3 vertices, CCW, convex. Collinear vertices are
  /// rejected unless `allow_collinear`.
  explicit ConvexPolygon(std::vector<Point> verts, bool allow_collinear = true);

  static ConvexPolygon axis_box(Point lo, Point hi);

  double area() const;
  bool contains(Point p, double slack = 0.0) const;
};

/// Which supporting curve an edge lies on. Lets later stages group fragments
/// of the same bisector / ball boundary without tolerance matching.
enum class CurveKind : std::uint8_t { None, Bisector, Ball, BBox, Spoke };

struct CurveTag {
  CurveKind kind = CurveKind::None;
  int a = -1;
  int b = -1;

  static CurveTag bisector(int s, int t) { return {CurveKind::Bisector, std::min(s, t), std::max(s, t)}; }
  static CurveTag ball(int s) { return {CurveKind::Ball, s, -1}; }
  static CurveTag bbox(int side) { return {CurveKind::BBox, side, -1}; }

  friend auto operator<=>(const CurveTag&, const CurveTag&) = default;
};

struct Segment {
  Point a;
  Point b;
};

/// Circular arc starting at angle `start` and sweeping `sweep` radians
/// (positive = counterclockwise). |sweep| == 2pi is a full circle.
struct Arc {
  Point center;
  double radius = 0.0;
  double start = 0.0;
  double sweep = 0.0;

  bool full() const { return std::abs(std::abs(sweep) - kTwoPi) < 1e-15; }
  Point at(double t) const { return polar(center, radius, start + t * sweep); }
};

struct Edge {
  std::variant<Segment, Arc> curve;
  CurveTag tag;

  bool is_arc() const { return std::holds_alternative<Arc>(curve); }
  const Segment& segment() const { return std::get<Segment>(curve); }
  const Arc& arc() const { return std::get<Arc>(curve); }
};

Point start_point(const Edge& e);
Point end_point(const Edge& e);
Point mid_point(const Edge& e);
Edge reversed(const Edge& e);
double length(const Edge& e);
/// Unit tangent in traversal direction at parameter t in [0,1].
Point tangent(const Edge& e, double t);
/// Line integral of (x dy - y dx) / 2 along the edge.
double green_term(const Edge& e);
double distance_to(const Edge& e, Point p);

/// Curve parameter in [0,1] of a point assumed to lie on the edge.
double parameter_of(const Edge& e, Point p);
/// Sub-edge between parameters t0 < t1.
Edge sub_edge(const Edge& e, double t0, double t1);
/// Whether the angle lies within the arc's angular range (with slack in radians).
bool arc_covers(const Arc& arc, double angle, double slack = 0.0);

/// Points where two edges meet. Collinear or co-circular overlaps report the
/// overlap's endpoints; tangencies report the touching point once.
std::vector<Point> intersections(const Edge& a, const Edge& b, double eps);

/// Closed curve (or open chain) of segments and arcs.
struct ArcSegBoundary {
  std::vector<Edge> elements;
  bool closed = true;

  /// Checks joins within eps_join; throws OpenBoundary when a closed
  /// boundary fails to close.
  void validate(const Tolerances& tol = {}) const;
};

/// Area enclosed by a closed boundary, positive when counterclockwise.
double signed_area(const ArcSegBoundary& boundary, bool strict = false,
                   const Tolerances& tol = {});

/// Green's-theorem sum over an unordered set of oriented boundary pieces.
double green_area(std::span<const Edge> pieces);

/// Winding number of `loops` around p (nonzero rule gives membership).
int winding_number(std::span<const ArcSegBoundary> loops, Point p);

double polygon_disk_intersection_area(const ConvexPolygon& poly, const Disk& d);

/// Intersection points of the two boundary circles.
std::vector<Point> circle_circle_intersections(const Disk& a, const Disk& b);

std::optional<ConvexPolygon> clip_convex_by_halfplanes(std::span<const HalfPlane> planes,
                                                       const ConvexPolygon& bbox);

/// Simple polygon with one curve tag per edge (edge i runs v[i] -> v[i+1]).
struct TaggedPolygon {
  std::vector<Point> vertices;
  std::vector<CurveTag> tags;

  static TaggedPolygon from_convex(const ConvexPolygon& poly);
  bool empty() const { return vertices.size() < 3; }
  double area() const;
  /// Even-odd membership; points within `slack` of the boundary count as inside.
  bool contains(Point p, double slack = 0.0) const;
  double boundary_distance(Point p) const;
  ArcSegBoundary to_boundary() const;
};

/// Sutherland-Hodgman clip of a convex tagged polygon; the new edge along
/// the clipping line receives `tag`.
TaggedPolygon clip(const TaggedPolygon& poly, const HalfPlane& plane, CurveTag tag);

}  // namespace smvd
