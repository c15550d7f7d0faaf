#include "smvd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smvd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::OpenBoundary: return "OpenBoundary";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::CoincidentCircles: return "CoincidentCircles";
    case ErrorCode::NotPolygonal: return "NotPolygonal";
    case ErrorCode::DegenerateBisector: return "DegenerateBisector";
    case ErrorCode::DuplicateSites: return "DuplicateSites";
    case ErrorCode::UnknownSite: return "UnknownSite";
    case ErrorCode::MetricMismatch: return "MetricMismatch";
    case ErrorCode::QuadraticNoRoot: return "QuadraticNoRoot";
    case ErrorCode::InfeasibleState: return "InfeasibleState";
    case ErrorCode::TopologyError: return "TopologyError";
    case ErrorCode::GenerationFailure: return "GenerationFailure";
    case ErrorCode::BOutOfRange: return "BOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

HalfPlane::HalfPlane(Point n, double off, const Tolerances& tol) : normal(n), offset(off) {
  if (std::abs(norm(n) - 1.0) > tol.eps_unit)
    throw Error(ErrorCode::InvalidInput, "half-plane normal is not unit length");
}

HalfPlane HalfPlane::closer_to(Point keep, Point other) {
  const Point d = other - keep;
  const double len = norm(d);
  if (len == 0.0) throw Error(ErrorCode::DuplicateSites, "bisector of coincident points");
  const Point n = (1.0 / len) * d;
  HalfPlane h;
  h.normal = n;
  h.offset = dot(n, 0.5 * (keep + other));
  return h;
}

// ---------------------------------------------------------------------------
// Convex polygons

namespace {

double shoelace(std::span<const Point> v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return 0.5 * s;
}

double extent(std::span<const Point> v) {
  double m = 0.0;
  for (const Point& p : v) m = std::max({m, std::abs(p.x), std::abs(p.y)});
  return std::max(m, 1.0);
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> verts, bool allow_collinear)
    : vertices(std::move(verts)) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(ErrorCode::InvalidInput, "convex polygon needs at least 3 vertices");
  const double scale = extent(vertices);
  const double eps = 1e-12 * scale * scale;
  if (shoelace(vertices) <= eps) throw Error(ErrorCode::InvalidInput, "convex polygon must be counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n], c = vertices[(i + 2) % n];
    const double turn = cross(b - a, c - b);
    if (turn < -eps || (!allow_collinear && turn <= eps))
      throw Error(ErrorCode::InvalidInput, "polygon is not convex");
  }
}

ConvexPolygon ConvexPolygon::axis_box(Point lo, Point hi) {
  return ConvexPolygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}, false);
}

double ConvexPolygon::area() const { return shoelace(vertices); }

bool ConvexPolygon::contains(Point p, double slack) const {
  for (std::size_t i = 0, n = vertices.size(); i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n];
    const Point d = b - a;
    if (cross(d, p - a) < -slack * norm(d)) return false;
  }
  return true;
}

std::optional<ConvexPolygon> clip_convex_by_halfplanes(std::span<const HalfPlane> planes,
                                                       const ConvexPolygon& bbox) {
  TaggedPolygon poly = TaggedPolygon::from_convex(bbox);
  for (const HalfPlane& h : planes) {
    poly = clip(poly, h, {});
    if (poly.empty()) return std::nullopt;
  }
  const double scale = extent(poly.vertices);
  if (shoelace(poly.vertices) <= 1e-14 * scale * scale) return std::nullopt;
  ConvexPolygon out;
  out.vertices = std::move(poly.vertices);
  return out;
}

// ---------------------------------------------------------------------------
// Tagged polygons

TaggedPolygon TaggedPolygon::from_convex(const ConvexPolygon& poly) {
  TaggedPolygon t;
  t.vertices = poly.vertices;
  t.tags.reserve(poly.vertices.size());
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) t.tags.push_back(CurveTag::bbox(static_cast<int>(i)));
  return t;
}

double TaggedPolygon::area() const { return shoelace(vertices); }

double TaggedPolygon::boundary_distance(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = vertices.size(); i < n; ++i) {
    const Edge e{Segment{vertices[i], vertices[(i + 1) % n]}, {}};
    best = std::min(best, distance_to(e, p));
  }
  return best;
}

bool TaggedPolygon::contains(Point p, double slack) const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  if (slack > 0.0 && boundary_distance(p) <= slack) return true;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = vertices[i], b = vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

ArcSegBoundary TaggedPolygon::to_boundary() const {
  ArcSegBoundary b;
  for (std::size_t i = 0, n = vertices.size(); i < n; ++i)
    b.elements.push_back({Segment{vertices[i], vertices[(i + 1) % n]}, tags[i]});
  return b;
}

TaggedPolygon clip(const TaggedPolygon& poly, const HalfPlane& plane, CurveTag tag) {
  TaggedPolygon out;
  const std::size_t n = poly.vertices.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = poly.vertices[i], nxt = poly.vertices[(i + 1) % n];
    const double dc = plane.signed_distance(cur), dn = plane.signed_distance(nxt);
    const CurveTag t = poly.tags[i];
    if (dc <= 0.0) {
      out.vertices.push_back(cur);
      out.tags.push_back(t);
      if (dn > 0.0) {
        out.vertices.push_back(lerp(cur, nxt, dc / (dc - dn)));
        out.tags.push_back(tag);
      }
    } else if (dn <= 0.0) {
      out.vertices.push_back(lerp(cur, nxt, dc / (dc - dn)));
      out.tags.push_back(t);
    }
  }
  // Drop zero-length edges.
  const double eps = 1e-14 * extent(out.vertices);
  for (std::size_t i = 0; i < out.vertices.size() && out.vertices.size() > 1;) {
    const std::size_t j = (i + 1) % out.vertices.size();
    if (dist(out.vertices[i], out.vertices[j]) <= eps) {
      out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(i));
      out.tags.erase(out.tags.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (out.vertices.size() < 3) {
    out.vertices.clear();
    out.tags.clear();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edges

Point start_point(const Edge& e) {
  if (e.is_arc()) return e.arc().at(0.0);
  return e.segment().a;
}

Point end_point(const Edge& e) {
  if (e.is_arc()) {
    const Arc& a = e.arc();
    return a.full() ? a.at(0.0) : a.at(1.0);
  }
  return e.segment().b;
}

Point mid_point(const Edge& e) {
  if (e.is_arc()) return e.arc().at(0.5);
  return lerp(e.segment().a, e.segment().b, 0.5);
}

Edge reversed(const Edge& e) {
  if (e.is_arc()) {
    Arc a = e.arc();
    a.start = a.start + a.sweep;
    a.sweep = -a.sweep;
    return {a, e.tag};
  }
  return {Segment{e.segment().b, e.segment().a}, e.tag};
}

double length(const Edge& e) {
  if (e.is_arc()) return e.arc().radius * std::abs(e.arc().sweep);
  return dist(e.segment().a, e.segment().b);
}

Point tangent(const Edge& e, double t) {
  if (e.is_arc()) {
    const Arc& a = e.arc();
    const double ang = a.start + t * a.sweep;
    const double s = a.sweep >= 0.0 ? 1.0 : -1.0;
    return {-s * std::sin(ang), s * std::cos(ang)};
  }
  const Point d = e.segment().b - e.segment().a;
  const double len = norm(d);
  return len > 0.0 ? (1.0 / len) * d : Point{};
}

double green_term(const Edge& e) {
  if (e.is_arc()) {
    const Arc& a = e.arc();
    const double t1 = a.start, t2 = a.start + a.sweep;
    const double r = a.radius;
    return 0.5 * (r * r * a.sweep + r * a.center.x * (std::sin(t2) - std::sin(t1)) -
                  r * a.center.y * (std::cos(t2) - std::cos(t1)));
  }
  return 0.5 * cross(e.segment().a, e.segment().b);
}

bool arc_covers(const Arc& arc, double angle, double slack) {
  if (arc.full()) return true;
  const double u = arc.sweep >= 0.0 ? wrap_angle(angle - arc.start) : wrap_angle(arc.start - angle);
  const double span = std::abs(arc.sweep);
  return u <= span + slack || u >= kTwoPi - slack;
}

double distance_to(const Edge& e, Point p) {
  if (e.is_arc()) {
    const Arc& a = e.arc();
    const Point d = p - a.center;
    const double r = norm(d);
    if (r > 0.0 && arc_covers(a, std::atan2(d.y, d.x))) return std::abs(r - a.radius);
    if (r == 0.0 && a.full()) return a.radius;
    return std::min(dist(p, start_point(e)), dist(p, end_point(e)));
  }
  const Point a = e.segment().a, b = e.segment().b;
  const Point d = b - a;
  const double l2 = norm2(d);
  double t = l2 > 0.0 ? dot(p - a, d) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, lerp(a, b, t));
}

double parameter_of(const Edge& e, Point p) {
  if (e.is_arc()) {
    const Arc& a = e.arc();
    const double ang = std::atan2(p.y - a.center.y, p.x - a.center.x);
    const double u = a.sweep >= 0.0 ? wrap_angle(ang - a.start) : wrap_angle(a.start - ang);
    double t = u / std::abs(a.sweep);
    if (!a.full() && t > 1.0) {
      // Slightly before the start wraps to just under 2pi.
      t = (kTwoPi - u) < (u - std::abs(a.sweep)) ? 0.0 : 1.0;
    }
    return std::clamp(t, 0.0, 1.0);
  }
  const Point a = e.segment().a, d = e.segment().b - e.segment().a;
  const double l2 = norm2(d);
  return l2 > 0.0 ? std::clamp(dot(p - a, d) / l2, 0.0, 1.0) : 0.0;
}

Edge sub_edge(const Edge& e, double t0, double t1) {
  if (e.is_arc()) {
    Arc a = e.arc();
    const double s = a.start + t0 * a.sweep;
    a.sweep = (t1 - t0) * a.sweep;
    a.start = s;
    return {a, e.tag};
  }
  const Segment& s = e.segment();
  return {Segment{t0 == 0.0 ? s.a : lerp(s.a, s.b, t0), t1 == 1.0 ? s.b : lerp(s.a, s.b, t1)}, e.tag};
}

// ---------------------------------------------------------------------------
// Intersections

namespace {

void segment_segment(const Segment& s1, const Segment& s2, double eps, std::vector<Point>& out) {
  const Point d1 = s1.b - s1.a, d2 = s2.b - s2.a;
  const double l1 = norm(d1), l2 = norm(d2);
  if (l1 == 0.0 || l2 == 0.0) return;
  const double denom = cross(d1, d2);
  const Point w = s2.a - s1.a;
  if (std::abs(denom) <= 1e-14 * l1 * l2) {
    // Parallel; only collinear overlap produces points.
    if (std::abs(cross(d1, w)) / l1 > eps) return;
    const Edge e1{s1, {}}, e2{s2, {}};
    for (Point p : {s1.a, s1.b})
      if (distance_to(e2, p) <= eps) out.push_back(p);
    for (Point p : {s2.a, s2.b})
      if (distance_to(e1, p) <= eps) out.push_back(p);
    return;
  }
  const double t = cross(w, d2) / denom;
  const double u = cross(w, d1) / denom;
  const double st = eps / l1, su = eps / l2;
  if (t < -st || t > 1.0 + st || u < -su || u > 1.0 + su) return;
  out.push_back(s1.a + std::clamp(t, 0.0, 1.0) * d1);
}

// Points where the segment meets the full circle.
void segment_circle(const Segment& s, Point c, double r, double eps, std::vector<Point>& out) {
  const Point d = s.b - s.a;
  const double len = norm(d);
  if (len == 0.0) return;
  const Point u = (1.0 / len) * d;
  const double tc = dot(c - s.a, u);      // foot of the perpendicular
  const double h = cross(u, c - s.a);     // signed distance center->line
  const double ah = std::abs(h);
  auto push = [&](double t) {
    if (t < -eps || t > len + eps) return;
    out.push_back(s.a + std::clamp(t, 0.0, len) * u);
  };
  if (ah > r + eps) return;
  if (ah >= r - eps && std::sqrt(std::max(0.0, r * r - h * h)) <= eps) {
    push(tc);
    return;
  }
  const double half = std::sqrt(std::max(0.0, r * r - h * h));
  push(tc - half);
  push(tc + half);
}

// Points where two full circles meet; `coincident` set when they are the same circle.
void circle_circle(Point c1, double r1, Point c2, double r2, double eps, std::vector<Point>& out,
                   bool& coincident) {
  coincident = false;
  const Point d = c2 - c1;
  const double dd = norm(d);
  if (dd <= eps) {
    if (std::abs(r1 - r2) <= eps) coincident = true;
    return;
  }
  if (dd > r1 + r2 + eps || dd < std::abs(r1 - r2) - eps) return;
  const Point u = (1.0 / dd) * d;
  const double a = (dd * dd + r1 * r1 - r2 * r2) / (2.0 * dd);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  if (h <= eps) {
    out.push_back(c1 + std::clamp(a, -r1, r1) * u);
    return;
  }
  const Point m = c1 + a * u;
  out.push_back(m + h * perp(u));
  out.push_back(m - h * perp(u));
}

bool on_arc(const Arc& a, Point p, double eps) {
  const double ang = std::atan2(p.y - a.center.y, p.x - a.center.x);
  return arc_covers(a, ang, a.radius > 0.0 ? eps / a.radius : 0.0);
}

}  // namespace

std::vector<Point> intersections(const Edge& a, const Edge& b, double eps) {
  std::vector<Point> pts;
  if (!a.is_arc() && !b.is_arc()) {
    segment_segment(a.segment(), b.segment(), eps, pts);
    return pts;
  }
  if (a.is_arc() != b.is_arc()) {
    const Segment& s = a.is_arc() ? b.segment() : a.segment();
    const Arc& c = a.is_arc() ? a.arc() : b.arc();
    std::vector<Point> raw;
    segment_circle(s, c.center, c.radius, eps, raw);
    for (Point p : raw)
      if (on_arc(c, p, eps)) pts.push_back(p);
    return pts;
  }
  const Arc& c1 = a.arc();
  const Arc& c2 = b.arc();
  std::vector<Point> raw;
  bool coincident = false;
  circle_circle(c1.center, c1.radius, c2.center, c2.radius, eps, raw, coincident);
  if (coincident) {
    if (!c1.full()) {
      for (Point p : {start_point(a), end_point(a)})
        if (on_arc(c2, p, eps)) pts.push_back(p);
    }
    if (!c2.full()) {
      for (Point p : {start_point(b), end_point(b)})
        if (on_arc(c1, p, eps)) pts.push_back(p);
    }
    return pts;
  }
  for (Point p : raw)
    if (on_arc(c1, p, eps) && on_arc(c2, p, eps)) pts.push_back(p);
  return pts;
}

std::vector<Point> circle_circle_intersections(const Disk& a, const Disk& b) {
  const double scale = std::max({1.0, a.radius, b.radius, norm(a.center), norm(b.center)});
  std::vector<Point> out;
  bool coincident = false;
  circle_circle(a.center, a.radius, b.center, b.radius, 1e-12 * scale, out, coincident);
  if (coincident) throw Error(ErrorCode::CoincidentCircles, "circles coincide");
  return out;
}

// ---------------------------------------------------------------------------
// Boundaries and areas

void ArcSegBoundary::validate(const Tolerances& tol) const {
  const std::size_t n = elements.size();
  if (n == 0) {
    if (closed) throw Error(ErrorCode::OpenBoundary, "empty boundary");
    return;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (dist(end_point(elements[i]), start_point(elements[i + 1])) > tol.eps_join)
      throw Error(ErrorCode::OpenBoundary, "consecutive boundary elements do not join");
  }
  if (closed) {
    if (n == 1 && elements[0].is_arc() && elements[0].arc().full()) return;
    if (dist(end_point(elements.back()), start_point(elements.front())) > tol.eps_join)
      throw Error(ErrorCode::OpenBoundary, "boundary does not close");
  }
}

double green_area(std::span<const Edge> pieces) {
  double s = 0.0;
  for (const Edge& e : pieces) s += green_term(e);
  return s;
}

double signed_area(const ArcSegBoundary& boundary, bool strict, const Tolerances& tol) {
  if (!boundary.closed) throw Error(ErrorCode::OpenBoundary, "signed area of an open boundary");
  boundary.validate(tol);
  if (strict) {
    const auto& el = boundary.elements;
    const std::size_t n = el.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool next = j == i + 1;
        const bool wrap = (i == 0 && j == n - 1);
        for (Point p : intersections(el[i], el[j], tol.eps_join)) {
          if (next && dist(p, end_point(el[i])) <= tol.eps_join) continue;
          if (wrap && dist(p, start_point(el[i])) <= tol.eps_join) continue;
          throw Error(ErrorCode::SelfIntersecting, "boundary elements intersect");
        }
      }
    }
  }
  return green_area(boundary.elements);
}

int winding_number(std::span<const ArcSegBoundary> loops, Point p) {
  int wn = 0;
  auto chord = [&](Point a, Point b) {
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0.0) ++wn;
    } else if (b.y <= p.y && cross(b - a, p - a) < 0.0) {
      --wn;
    }
  };
  for (const ArcSegBoundary& loop : loops) {
    for (const Edge& e : loop.elements) {
      if (!e.is_arc()) {
        chord(e.segment().a, e.segment().b);
        continue;
      }
      const Arc& a = e.arc();
      const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(a.sweep) / (kPi / 2.0))));
      const bool inside_circle = dist(p, a.center) < a.radius;
      for (int k = 0; k < pieces; ++k) {
        const double t0 = static_cast<double>(k) / pieces, t1 = static_cast<double>(k + 1) / pieces;
        const Point s = a.at(t0), f = a.at(t1);
        chord(s, f);
        // Circular segment between the chord and the arc.
        if (inside_circle && cross(f - s, p - s) * cross(f - s, a.center - s) < 0.0)
          wn += a.sweep > 0.0 ? 1 : -1;
      }
    }
  }
  return wn;
}

namespace {

// Signed area of triangle (origin, a, b) intersected with the disk of
// radius r at the origin.
double triangle_disk(Point a, Point b, double r) {
  const Point d = b - a;
  const double A = norm2(d), B = dot(a, d), C = norm2(a) - r * r;
  std::vector<double> ts{0.0};
  if (A > 0.0) {
    const double disc = B * B - A * C;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-B - sq) / A, (-B + sq) / A})
        if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  }
  ts.push_back(1.0);
  std::sort(ts.begin(), ts.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const Point p = a + ts[i] * d, q = a + ts[i + 1] * d;
    const Point m = 0.5 * (p + q);
    if (norm2(m) <= r * r) {
      area += 0.5 * cross(p, q);
    } else {
      area += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
    }
  }
  return area;
}

}  // namespace

double polygon_disk_intersection_area(const ConvexPolygon& poly, const Disk& d) {
  double area = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0, n = v.size(); i < n; ++i)
    area += triangle_disk(v[i] - d.center, v[(i + 1) % n] - d.center, d.radius);
  return std::max(0.0, area);
}

}  // namespace smvd
