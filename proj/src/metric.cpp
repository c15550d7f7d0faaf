#include "smvd/metric.hpp"

#include <algorithm>
#include <cmath>

namespace smvd {

Metric Metric::euclidean() { return Metric{}; }

Metric Metric::polygonal(std::vector<Point> v, const Tolerances& tol) {
  if (v.size() < 4 || v.size() % 2 != 0)
    throw Error(ErrorCode::InvalidInput, "symmetric unit ball needs an even number (>= 4) of vertices");
  for (Point p : v)
    if (norm(p) <= tol.eps_join) throw Error(ErrorCode::InvalidInput, "unit ball vertex at the origin");
  std::sort(v.begin(), v.end(),
            [](Point a, Point b) { return wrap_angle(std::atan2(a.y, a.x)) < wrap_angle(std::atan2(b.y, b.x)); });

  // Pair v with its antipode and average the pair.
  const std::size_t n = v.size(), half = n / 2;
  std::vector<Point> sym(n);
  for (std::size_t i = 0; i < half; ++i) {
    const Point a = v[i], b = v[i + half];
    if (norm(a + b) > tol.eps_join)
      throw Error(ErrorCode::InvalidInput, "unit ball is not symmetric about the origin");
    const Point m = 0.5 * (a - b);
    sym[i] = m;
    sym[i + half] = -m;
  }

  Metric out;
  out.kind_ = MetricKind::Polygonal;
  out.ball_ = ConvexPolygon(sym, false);
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = sym[k], b = sym[(k + 1) % n];
    const Point e = b - a;
    const Point nk = (1.0 / norm(e)) * Point{e.y, -e.x};
    const double h = dot(nk, a);
    if (h <= tol.eps_join) throw Error(ErrorCode::InvalidInput, "unit ball must contain the origin strictly");
    out.normals_.push_back(nk);
    out.offsets_.push_back(h);
    out.angles_.push_back(wrap_angle(std::atan2(a.y, a.x)));
  }
  return out;
}

std::size_t Metric::facet_of(Point u) const {
  const double th = wrap_angle(std::atan2(u.y, u.x));
  auto it = std::upper_bound(angles_.begin(), angles_.end(), th);
  if (it == angles_.begin()) return angles_.size() - 1;
  return static_cast<std::size_t>(it - angles_.begin()) - 1;
}

double Metric::distance(Point a, Point b) const {
  if (kind_ == MetricKind::Euclidean) return dist(a, b);
  const Point u = b - a;
  if (u.x == 0.0 && u.y == 0.0) return 0.0;
  const std::size_t k = facet_of(u);
  return std::max(0.0, dot(normals_[k], u) / offsets_[k]);
}

std::vector<Point> Metric::spokes() const {
  if (kind_ == MetricKind::Euclidean) throw Error(ErrorCode::NotPolygonal, "Euclidean metric has no spokes");
  std::vector<Point> out;
  for (Point v : ball_.vertices) out.push_back((1.0 / norm(v)) * v);
  return out;
}

double Metric::ball_area(double r) const {
  return (kind_ == MetricKind::Euclidean ? kPi : ball_.area()) * r * r;
}

double Metric::ball_extent() const {
  if (kind_ == MetricKind::Euclidean) return 1.0;
  double m = 0.0;
  for (Point v : ball_.vertices) m = std::max(m, norm(v));
  return m;
}

TaggedPolygon Metric::ball_polygon(Point center, double r, CurveTag tag) const {
  if (kind_ == MetricKind::Euclidean) throw Error(ErrorCode::NotPolygonal, "Euclidean balls are disks");
  TaggedPolygon p;
  for (Point v : ball_.vertices) {
    p.vertices.push_back(center + r * v);
    p.tags.push_back(tag);
  }
  return p;
}

Shape Metric::ball_shape(Point center, double r, CurveTag tag) const {
  if (kind_ == MetricKind::Euclidean) return Shape::disk(Disk(center, r), tag);
  return Shape::polygon(ball_polygon(center, r, tag));
}

namespace {

// Cone at q between spokes k and k+1, as two half-planes.
void clip_to_wedge(TaggedPolygon& poly, const std::vector<Point>& verts, std::size_t k, Point q) {
  const Point a = verts[k], b = verts[(k + 1) % verts.size()];
  const Point na = (1.0 / norm(a)) * Point{a.y, -a.x};
  const Point nb = (1.0 / norm(b)) * Point{-b.y, b.x};
  const CurveTag spoke{CurveKind::Spoke, -1, -1};
  poly = clip(poly, HalfPlane(na, dot(na, q)), spoke);
  if (!poly.empty()) poly = clip(poly, HalfPlane(nb, dot(nb, q)), spoke);
}

Point centroid(const TaggedPolygon& p) {
  Point c{0, 0};
  for (Point v : p.vertices) c = c + v;
  return (1.0 / static_cast<double>(p.vertices.size())) * c;
}

}  // namespace

Bisector bisector(const Metric& m, Point s, Point t, const ConvexPolygon& bbox, int s_id, int t_id,
                  const BisectorOptions& opt) {
  if (dist(s, t) <= opt.eps) throw Error(ErrorCode::InvalidInput, "bisector of coincident sites");
  const CurveTag tag = CurveTag::bisector(s_id, t_id);
  const TaggedPolygon box = TaggedPolygon::from_convex(bbox);
  Bisector out;
  if (m.is_euclidean()) {
    out.half_plane = HalfPlane::closer_to(s, t);
    out.dominance = clip(box, *out.half_plane, tag);
    const std::size_t n = out.dominance.vertices.size();
    for (std::size_t i = 0; i < n; ++i)
      if (out.dominance.tags[i] == tag)
        out.polyline.push_back({out.dominance.vertices[i], out.dominance.vertices[(i + 1) % n]});
    return out;
  }

  const auto& verts = m.unit_ball().vertices;
  const std::size_t k = m.facet_count();
  const double min_area = 1e-14 * bbox.area();
  std::vector<Shape> pieces;
  for (std::size_t i = 0; i < k; ++i) {
    TaggedPolygon wi = box;
    clip_to_wedge(wi, verts, i, s);
    if (wi.empty()) continue;
    for (std::size_t j = 0; j < k; ++j) {
      TaggedPolygon piece = wi;
      clip_to_wedge(piece, verts, j, t);
      if (piece.empty() || piece.area() <= min_area) continue;
      const Point ni = (1.0 / m.facet_offset(i)) * m.facet_normal(i);
      const Point nj = (1.0 / m.facet_offset(j)) * m.facet_normal(j);
      const Point g = ni - nj;
      const double c = dot(ni, s) - dot(nj, t);
      if (i == j) {
        // Same linear piece on both sides: the difference is constant.
        const double diff = dot(m.facet_normal(i), t - s);
        if (std::abs(diff) <= opt.eps * dist(s, t)) {
          if (!opt.allow_degenerate)
            throw Error(ErrorCode::DegenerateBisector, "sites aligned with a unit-ball edge");
          if (cross(t - s, centroid(piece) - s) <= 0.0) continue;
        } else if (diff > 0.0) {
          continue;
        }
      } else {
        const double gn = norm(g);
        piece = clip(piece, HalfPlane((1.0 / gn) * g, c / gn), tag);
        if (piece.empty() || piece.area() <= min_area) continue;
      }
      pieces.push_back(Shape::polygon(piece));
    }
  }

  auto loops = assemble_loops(union_boundary(pieces, opt.eps), opt.eps);
  if (loops.size() != 1) throw Error(ErrorCode::TopologyError, "dominance region is not a single loop");
  ArcSegBoundary& loop = loops.front();
  for (Edge& e : loop.elements)
    if (e.tag.kind != CurveKind::BBox) e.tag = tag;
  merge_collinear(loop, opt.eps);
  for (const Edge& e : loop.elements) {
    out.dominance.vertices.push_back(e.segment().a);
    out.dominance.tags.push_back(e.tag);
    if (e.tag == tag) out.polyline.push_back(e.segment());
  }
  return out;
}

}  // namespace smvd
