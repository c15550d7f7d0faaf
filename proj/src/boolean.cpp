#include "smvd/boolean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smvd {

Box bounds(const Edge& e) {
  if (!e.is_arc()) {
    const Segment& s = e.segment();
    return {std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y), std::max(s.a.x, s.b.x),
            std::max(s.a.y, s.b.y)};
  }
  const Arc& a = e.arc();
  if (a.full())
    return {a.center.x - a.radius, a.center.y - a.radius, a.center.x + a.radius, a.center.y + a.radius};
  const Point p = start_point(e), q = end_point(e);
  Box b{std::min(p.x, q.x), std::min(p.y, q.y), std::max(p.x, q.x), std::max(p.y, q.y)};
  // Extreme points of the circle that the arc passes.
  for (int k = 0; k < 4; ++k) {
    const double ang = k * kPi / 2.0;
    if (!arc_covers(a, ang)) continue;
    const Point x = polar(a.center, a.radius, ang);
    b.xmin = std::min(b.xmin, x.x);
    b.xmax = std::max(b.xmax, x.x);
    b.ymin = std::min(b.ymin, x.y);
    b.ymax = std::max(b.ymax, x.y);
  }
  return b;
}

namespace {

Box merge(Box a, const Box& b) {
  a.xmin = std::min(a.xmin, b.xmin);
  a.ymin = std::min(a.ymin, b.ymin);
  a.xmax = std::max(a.xmax, b.xmax);
  a.ymax = std::max(a.ymax, b.ymax);
  return a;
}

}  // namespace

Shape Shape::polygon(const TaggedPolygon& poly) {
  Shape s;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    s.boundary_.push_back({Segment{poly.vertices[i], poly.vertices[(i + 1) % n]}, poly.tags[i]});
    s.edge_boxes_.push_back(bounds(s.boundary_.back()));
    s.box_ = i == 0 ? s.edge_boxes_.back() : merge(s.box_, s.edge_boxes_.back());
  }
  return s;
}

Shape Shape::disk(const Disk& d, CurveTag tag) {
  Shape s;
  s.is_disk_ = true;
  s.disk_ = d;
  s.boundary_.push_back({Arc{d.center, d.radius, 0.0, kTwoPi}, tag});
  s.edge_boxes_.push_back(bounds(s.boundary_.back()));
  s.box_ = s.edge_boxes_.back();
  return s;
}

Side Shape::classify(Point p, double eps, Point* tangent_out) const {
  if (p.x < box_.xmin - eps || p.x > box_.xmax + eps || p.y < box_.ymin - eps || p.y > box_.ymax + eps)
    return Side::Outside;
  if (is_disk_) {
    const Point d = p - disk_.center;
    const double r = norm(d);
    if (std::abs(r - disk_.radius) <= eps) {
      if (tangent_out) *tangent_out = r > 0.0 ? (1.0 / r) * perp(d) : Point{1.0, 0.0};
      return Side::On;
    }
    return r < disk_.radius ? Side::Inside : Side::Outside;
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  bool inside = false;
  const std::size_t n = boundary_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& s = boundary_[i].segment();
    if ((s.a.y > p.y) != (s.b.y > p.y)) {
      const double x = s.a.x + (p.y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y);
      if (p.x < x) inside = !inside;
    }
    const Box& b = edge_boxes_[i];
    if (p.x < b.xmin - eps || p.x > b.xmax + eps || p.y < b.ymin - eps || p.y > b.ymax + eps) continue;
    const double d = distance_to(boundary_[i], p);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  if (best <= eps) {
    if (tangent_out) *tangent_out = tangent(boundary_[best_i], 0.5);
    return Side::On;
  }
  return inside ? Side::Inside : Side::Outside;
}

namespace {

// Strict inside/outside for a point that the tolerance test put on the
// boundary of a transversal curve.
bool strictly_inside(const Shape& s, Point p) {
  return s.classify(p, 0.0) == Side::Inside;
}

}  // namespace

std::vector<Edge> intersection_boundary(std::span<const Literal> literals, double eps) {
  std::vector<Edge> out;
  const double tiny = 1e-3 * eps;
  std::vector<double> params;
  for (std::size_t i = 0; i < literals.size(); ++i)
    for (std::size_t j = i + 1; j < literals.size(); ++j)
      if (!literals[i].complement && !literals[j].complement &&
          !literals[i].shape->box().overlaps(literals[j].shape->box(), eps))
        return out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    const Shape& shape = *literals[i].shape;
    for (const Edge& raw : shape.boundary()) {
      const Box eb = bounds(raw);
      params.clear();
      for (std::size_t j = 0; j < literals.size(); ++j) {
        if (j == i) continue;
        const Shape& other = *literals[j].shape;
        if (!eb.overlaps(other.box(), eps)) continue;
        for (const Edge& f : other.boundary()) {
          if (!eb.overlaps(bounds(f), eps)) continue;
          for (Point p : intersections(raw, f, eps)) params.push_back(parameter_of(raw, p));
        }
      }
      const double len = length(raw);
      if (len <= tiny) continue;
      const bool full = raw.is_arc() && raw.arc().full();
      std::sort(params.begin(), params.end());
      std::vector<double> cuts;
      for (double t : params) {
        if (!full && (t * len <= tiny || (1.0 - t) * len <= tiny)) continue;
        if (!cuts.empty() && (t - cuts.back()) * len <= tiny) continue;
        cuts.push_back(t);
      }
      if (full && cuts.size() > 1 && (cuts.front() + 1.0 - cuts.back()) * len <= tiny) cuts.pop_back();

      std::vector<std::pair<double, double>> spans;
      if (full) {
        if (cuts.empty()) {
          spans.emplace_back(0.0, 1.0);
        } else {
          for (std::size_t k = 0; k + 1 < cuts.size(); ++k) spans.emplace_back(cuts[k], cuts[k + 1]);
          spans.emplace_back(cuts.back(), cuts.front() + 1.0);
        }
      } else {
        double prev = 0.0;
        for (double t : cuts) {
          spans.emplace_back(prev, t);
          prev = t;
        }
        spans.emplace_back(prev, 1.0);
      }

      for (const auto& [t0, t1] : spans) {
        if ((t1 - t0) * len <= tiny) continue;
        Edge piece = (full && cuts.empty()) ? raw : sub_edge(raw, t0, t1);
        if (literals[i].complement) piece = reversed(piece);
        const Point m = mid_point(piece);
        const Point tau = tangent(piece, 0.5);
        bool keep = true;
        for (std::size_t j = 0; j < literals.size() && keep; ++j) {
          if (j == i) continue;
          const Shape& other = *literals[j].shape;
          Point tj;
          const Side side = other.classify(m, eps, &tj);
          if (side == Side::On) {
            if (literals[j].complement) tj = -1.0 * tj;
            if (std::abs(cross(tau, tj)) < 1e-6) {
              // Coincident boundaries: same direction keeps one copy,
              // opposite direction bounds a measure-zero set.
              keep = dot(tau, tj) > 0.0 && i < j;
              continue;
            }
            const bool in = strictly_inside(other, m);
            keep = in != literals[j].complement;
            continue;
          }
          keep = (side == Side::Inside) != literals[j].complement;
        }
        if (keep) out.push_back(piece);
      }
    }
  }
  return out;
}

std::vector<Edge> union_boundary(std::span<const Shape> shapes, double eps) {
  std::vector<Literal> lits;
  lits.reserve(shapes.size());
  for (const Shape& s : shapes) lits.push_back({&s, true});
  std::vector<Edge> pieces = intersection_boundary(lits, eps);
  for (Edge& e : pieces) e = reversed(e);
  return pieces;
}

std::vector<ArcSegBoundary> assemble_loops(std::vector<Edge> pieces, double join_tol) {
  std::vector<ArcSegBoundary> loops;
  std::vector<Edge> open;
  for (Edge& e : pieces) {
    if (e.is_arc() && e.arc().full()) {
      loops.push_back({{e}, true});
    } else {
      open.push_back(std::move(e));
    }
  }
  const std::size_t n = open.size();
  std::vector<Point> starts(n);
  std::vector<std::size_t> by_x(n);
  for (std::size_t i = 0; i < n; ++i) {
    starts[i] = start_point(open[i]);
    by_x[i] = i;
  }
  std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) { return starts[a].x < starts[b].x; });
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = starts[by_x[k]].x;
  std::vector<bool> used(n, false);

  auto nearest = [&](Point p, double& best_d) {
    std::size_t best = n;
    best_d = std::numeric_limits<double>::infinity();
    auto lo = std::lower_bound(xs.begin(), xs.end(), p.x - join_tol);
    for (auto it = lo; it != xs.end() && *it <= p.x + join_tol; ++it) {
      const std::size_t idx = by_x[static_cast<std::size_t>(it - xs.begin())];
      if (used[idx]) continue;
      const double d = dist(starts[idx], p);
      if (d < best_d) {
        best_d = d;
        best = idx;
      }
    }
    return best;
  };

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (used[seed]) continue;
    ArcSegBoundary loop;
    used[seed] = true;
    loop.elements.push_back(open[seed]);
    const Point origin = starts[seed];
    for (;;) {
      const Point end = end_point(loop.elements.back());
      double d_next = 0.0;
      const std::size_t next = nearest(end, d_next);
      const double d_close = dist(end, origin);
      if (d_close <= join_tol && d_close <= d_next) break;
      if (next == n || d_next > join_tol)
        throw Error(ErrorCode::TopologyError, "boundary pieces do not close into loops");
      used[next] = true;
      Edge e = open[next];
      if (!e.is_arc()) std::get<Segment>(e.curve).a = end;
      loop.elements.push_back(std::move(e));
    }
    Edge& last = loop.elements.back();
    if (!last.is_arc()) std::get<Segment>(last.curve).b = start_point(loop.elements.front());
    loops.push_back(std::move(loop));
  }
  return loops;
}

void merge_collinear(ArcSegBoundary& loop, double eps) {
  auto& el = loop.elements;
  auto mergeable = [&](const Edge& a, const Edge& b) {
    if (a.is_arc() || b.is_arc() || a.tag != b.tag) return false;
    const Point d1 = a.segment().b - a.segment().a, d2 = b.segment().b - b.segment().a;
    const double l1 = norm(d1), l2 = norm(d2);
    if (l1 == 0.0 || l2 == 0.0) return true;
    return dot(d1, d2) > 0.0 && std::abs(cross(d1, d2)) <= eps * std::max(l1, l2);
  };
  bool changed = true;
  while (changed && el.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < el.size() && el.size() > 1; ++i) {
      const std::size_t j = (i + 1) % el.size();
      if (!mergeable(el[i], el[j])) continue;
      const Point a = el[i].segment().a, b = el[j].segment().b;
      el[i] = {Segment{a, b}, el[i].tag};
      el.erase(el.begin() + static_cast<std::ptrdiff_t>(j));
      changed = true;
      if (j < i) break;
    }
  }
}

double loops_area(std::span<const ArcSegBoundary> loops) {
  double s = 0.0;
  for (const ArcSegBoundary& l : loops) s += green_area(l.elements);
  return s;
}

}  // namespace smvd
