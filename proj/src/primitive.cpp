#include "smvd/primitive.hpp"

#include <algorithm>
#include <cmath>

namespace smvd {

namespace {

// Tag of the growing ball; never used by committed balls.
const CurveTag kProbe{CurveKind::Ball, -1, -1};

struct Prepared {
  Shape cell;
  std::vector<const Shape*> obstructions;
};

Prepared prepare(const PrimitiveQuery& q) {
  if (q.metric == nullptr) throw Error(ErrorCode::InvalidInput, "primitive query without a metric");
  if (q.cell.empty()) throw Error(ErrorCode::InvalidInput, "primitive query with an empty cell");
  Prepared p{Shape::polygon(q.cell), {}};
  for (const Shape* s : q.obstructions)
    if (s->box().overlaps(p.cell.box(), 1e-9)) p.obstructions.push_back(s);
  return p;
}

double area_with(const PrimitiveQuery& q, const Prepared& p, double r, double* moving_length) {
  if (moving_length) *moving_length = 0.0;
  if (r <= 0.0) return 0.0;
  const Shape ball = q.metric->ball_shape(q.site, r, kProbe);
  std::vector<Literal> lits{{&p.cell, false}, {&ball, false}};
  for (const Shape* s : p.obstructions)
    if (s->box().overlaps(ball.box(), 1e-9)) lits.push_back({s, true});
  const auto pieces = intersection_boundary(lits, 1e-9);
  if (moving_length)
    for (const Edge& e : pieces)
      if (e.tag == kProbe) *moving_length += length(e);
  return green_area(pieces);
}

std::vector<Edge> available_pieces(const Prepared& p) {
  std::vector<Literal> lits{{&p.cell, false}};
  for (const Shape* s : p.obstructions) lits.push_back({s, true});
  return intersection_boundary(lits, 1e-9);
}

double farthest_vertex(const PrimitiveQuery& q) {
  double r = 0.0;
  for (Point v : q.cell.vertices) r = std::max(r, q.metric->distance(q.site, v));
  return r;
}

}  // namespace

double area_at_radius(const PrimitiveQuery& q, double r, double* moving_length) {
  return area_with(q, prepare(q), r, moving_length);
}

double available_area(const PrimitiveQuery& q) { return green_area(available_pieces(prepare(q))); }

PrimitiveAnswer solve_euclidean(const PrimitiveQuery& q, const PrimitiveOptions& opt) {
  if (!q.metric || !q.metric->is_euclidean()) throw Error(ErrorCode::InvalidInput, "solve_euclidean needs Euclidean");
  if (!(q.appetite > 0.0)) throw Error(ErrorCode::InvalidInput, "appetite must be positive");
  const Prepared p = prepare(q);
  const double A = q.appetite;
  const double eps_area = opt.eps_area_rel * A;
  PrimitiveAnswer ans;
  const double total = green_area(available_pieces(p));
  ans.evaluations = 1;
  if (total < A - eps_area) {
    ans.achieved_area = total;
    return ans;
  }

  double lo = 0.0, hi = farthest_vertex(q);
  double r = std::clamp(std::sqrt(A / kPi), 0.5 * hi * 1e-6, hi);
  double f = 0.0, len = 0.0;
  // Converge well past the tolerance so downstream radii agree to ~1e-13.
  for (int it = 0; it < 200; ++it) {
    f = area_with(q, p, r, &len) - A;
    ++ans.evaluations;
    if (f > 0.0) {
      hi = r;
    } else {
      lo = r;
    }
    if (f == 0.0) break;
    double next = len > 0.0 ? r - f / len : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, r) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi))
      break;
    r = next;
  }
  if (std::abs(f) > eps_area) {
    // Newton can stall on a flat stretch; finish by bisection.
    for (int it = 0; it < 200 && hi - lo > opt.eps_radius * 1e-3; ++it) {
      r = 0.5 * (lo + hi);
      f = area_with(q, p, r, nullptr) - A;
      ++ans.evaluations;
      (f > 0.0 ? hi : lo) = r;
    }
  }
  ans.radius = r;
  ans.achieved_area = f + A;
  ans.status = PrimitiveStatus::Solved;
  return ans;
}

// ---------------------------------------------------------------------------
// Polygonal pipeline

namespace detail {

std::vector<Triangle> slab_triangulation_impl(std::span<const Segment> pieces,
                                              bool (*inside)(const void*, Point), const void* ctx) {
  std::vector<Triangle> out;
  if (pieces.empty()) return out;
  double scale = 0.0;
  std::vector<double> xs;
  for (const Segment& s : pieces) {
    xs.push_back(s.a.x);
    xs.push_back(s.b.x);
    scale = std::max({scale, std::abs(s.a.x), std::abs(s.a.y), std::abs(s.b.x), std::abs(s.b.y)});
  }
  const double tiny = 1e-13 * std::max(1.0, scale);
  std::sort(xs.begin(), xs.end());
  std::vector<double> cuts;
  for (double x : xs)
    if (cuts.empty() || x - cuts.back() > tiny) cuts.push_back(x);

  struct Span {
    double y0, y1, ym;
  };
  std::vector<Span> active;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double x0 = cuts[k], x1 = cuts[k + 1], xm = 0.5 * (x0 + x1);
    active.clear();
    for (const Segment& s : pieces) {
      Point a = s.a, b = s.b;
      if (a.x > b.x) std::swap(a, b);
      if (b.x - a.x <= tiny || a.x > x0 + tiny || b.x < x1 - tiny) continue;
      auto y_at = [&](double x) {
        if (std::abs(x - a.x) <= tiny) return a.y;
        if (std::abs(x - b.x) <= tiny) return b.y;
        return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
      };
      active.push_back({y_at(x0), y_at(x1), y_at(xm)});
    }
    std::sort(active.begin(), active.end(), [](const Span& l, const Span& r) { return l.ym < r.ym; });
    for (std::size_t j = 0; j + 1 < active.size(); ++j) {
      const Span &lo = active[j], &hi = active[j + 1];
      if (hi.ym - lo.ym <= tiny) continue;
      if (!inside(ctx, Point{xm, 0.5 * (lo.ym + hi.ym)})) continue;
      const Point p00{x0, lo.y0}, p10{x1, lo.y1}, p11{x1, hi.y1}, p01{x0, hi.y0};
      if (hi.y0 - lo.y0 > tiny) out.push_back({p00, p10, p01});
      if (hi.y1 - lo.y1 > tiny) out.push_back({p10, p11, p01});
    }
  }
  return out;
}

}  // namespace detail

namespace {

using Poly = std::vector<Point>;

double poly_area(const Poly& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * s;
}

// Keeps { x : dot(n, x) <= c } of a convex polygon.
Poly clip_poly(const Poly& p, Point n, double c) {
  Poly out;
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = p[i], b = p[(i + 1) % m];
    const double da = dot(n, a) - c, db = dot(n, b) - c;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) out.push_back(lerp(a, b, da / (da - db)));
  }
  return out;
}

struct WedgeTriangle {
  Triangle t;
  Point n;   // facet normal divided by its offset: level(p) = dot(n, p - site)
};

double level(const WedgeTriangle& w, Point site, Point p) { return dot(w.n, p - site); }

// Area of the part of w below level d.
double area_below(const WedgeTriangle& w, Point site, double d) {
  const Poly t{w.t[0], w.t[1], w.t[2]};
  return std::abs(poly_area(clip_poly(t, w.n, d + dot(w.n, site))));
}

double total_below(std::span<const WedgeTriangle> ts, Point site, double d) {
  double s = 0.0;
  for (const WedgeTriangle& w : ts) s += area_below(w, site, d);
  return s;
}

}  // namespace

PrimitiveAnswer solve_polygonal(const PrimitiveQuery& q, const PrimitiveOptions& opt) {
  if (!q.metric || q.metric->is_euclidean()) throw Error(ErrorCode::NotPolygonal, "solve_polygonal needs a polygonal metric");
  if (!(q.appetite > 0.0)) throw Error(ErrorCode::InvalidInput, "appetite must be positive");
  const Metric& m = *q.metric;
  const Prepared p = prepare(q);
  const double A = q.appetite;
  const double eps_area = opt.eps_area_rel * A;
  PrimitiveAnswer ans;

  // Step 1: P \ C, triangulated, then split along the spoke lines.
  const auto boundary = available_pieces(p);
  std::vector<Segment> segs;
  for (const Edge& e : boundary) segs.push_back(e.segment());
  auto inside = [&](Point x) {
    if (p.cell.classify(x, 0.0) != Side::Inside) return false;
    for (const Shape* s : p.obstructions)
      if (s->classify(x, 0.0) == Side::Inside) return false;
    return true;
  };
  const std::vector<Triangle> t1 = slab_triangulation(segs, inside);

  std::vector<Poly> parts;
  for (const Triangle& t : t1) parts.push_back({t[0], t[1], t[2]});
  const auto spokes = m.spokes();
  for (std::size_t k = 0; k < spokes.size() / 2; ++k) {
    const Point n = perp(spokes[k]);
    const double c = dot(n, q.site);
    std::vector<Poly> next;
    for (const Poly& poly : parts) {
      Poly a = clip_poly(poly, n, c), b = clip_poly(poly, -1.0 * n, -c);
      if (a.size() >= 3 && std::abs(poly_area(a)) > 0.0) next.push_back(std::move(a));
      if (b.size() >= 3 && std::abs(poly_area(b)) > 0.0) next.push_back(std::move(b));
    }
    parts = std::move(next);
  }
  std::vector<WedgeTriangle> t2;
  for (const Poly& poly : parts) {
    Point c{0, 0};
    for (Point v : poly) c = c + v;
    c = (1.0 / static_cast<double>(poly.size())) * c;
    const std::size_t f = m.facet_of(c - q.site);
    const Point n = (1.0 / m.facet_offset(f)) * m.facet_normal(f);
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) t2.push_back({{poly[0], poly[i], poly[i + 1]}, n});
  }

  double total = 0.0;
  for (const WedgeTriangle& w : t2) total += std::abs(poly_area({w.t[0], w.t[1], w.t[2]}));
  ans.evaluations = 1;
  if (total < A - eps_area) {
    ans.achieved_area = total;
    return ans;
  }

  // Step 2: sorted vertex distances, one vertex per distance (lowest (x, y)).
  struct Tagged {
    double d;
    Point v;
  };
  std::vector<Tagged> verts{{0.0, q.site}};
  for (const WedgeTriangle& w : t2)
    for (Point v : w.t) verts.push_back({m.distance(q.site, v), v});
  std::sort(verts.begin(), verts.end(), [](const Tagged& a, const Tagged& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.v.x != b.v.x) return a.v.x < b.v.x;
    return a.v.y < b.v.y;
  });
  std::vector<double> L;
  for (const Tagged& t : verts)
    if (L.empty() || t.d > L.back()) L.push_back(t.d);

  std::size_t lo = 0, hi = L.size() - 1;  // area(L[lo]) <= A, area(L[hi]) >= A
  if (total_below(t2, q.site, L[hi]) < A) {
    // Saturated within rounding of the total area.
    ans.radius = L[hi];
    ans.achieved_area = total;
    ans.status = PrimitiveStatus::Solved;
    return ans;
  }
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    ++ans.evaluations;
    if (total_below(t2, q.site, L[mid]) <= A) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double d1 = L[lo], d2 = L[hi], h = d2 - d1;
  if (!(h > 0.0)) throw Error(ErrorCode::QuadraticNoRoot, "zero-height bracket");

  // Step 3: cut at levels d1 and d2; pieces in between have their vertices on
  // the two levels and split into triangles with a base on one of them.
  double a_inside = 0.0, a1 = 0.0, a2 = 0.0;
  const double snap = 1e-9 * h;
  for (const WedgeTriangle& w : t2) {
    const Poly t{w.t[0], w.t[1], w.t[2]};
    const double off = dot(w.n, q.site);
    a_inside += std::abs(poly_area(clip_poly(t, w.n, d1 + off)));
    const Poly band = clip_poly(clip_poly(t, w.n, d2 + off), -1.0 * w.n, -(d1 + off));
    if (band.size() < 3 || std::abs(poly_area(band)) <= 0.0) continue;
    std::vector<Point> on1, on2;
    for (Point v : band) {
      auto& side = level(w, q.site, v) - d1 <= snap ? on1 : on2;
      if (side.empty() || dist(side.back(), v) > snap * 1e-3) side.push_back(v);
    }
    auto base = [](const std::vector<Point>& pts) {
      double best = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, dist(pts[i], pts[j]));
      return best;
    };
    const double b1 = base(on1), b2 = base(on2);
    // The band is a trapezoid with parallel sides b1 and b2; the diagonal
    // splits it into an R1 triangle (base on B1) and an R2 triangle.
    const double area = std::abs(poly_area(band));
    if (b1 + b2 <= 0.0) continue;
    a1 += area * b1 / (b1 + b2);
    a2 += area * b2 / (b1 + b2);
  }

  // Step 4: area(u) - A' = (a2 - a1) u^2 + 2 a1 u with u = (r - d1) / h.
  const double need = A - a_inside;
  const double disc = 4.0 * a1 * a1 + 4.0 * (a2 - a1) * need;
  if (disc < -1e-12 * (a1 + a2) * (a1 + a2)) throw Error(ErrorCode::QuadraticNoRoot, "negative discriminant");
  const double denom = 2.0 * a1 + std::sqrt(std::max(0.0, disc));
  double u = denom > 0.0 ? 2.0 * need / denom : 0.0;
  if (u < -1e-9 || u > 1.0 + 1e-9) throw Error(ErrorCode::QuadraticNoRoot, "quadratic root outside the bracket");
  u = std::clamp(u, 0.0, 1.0);
  ans.radius = d1 + u * h;
  ans.achieved_area = total_below(t2, q.site, ans.radius);
  ans.status = PrimitiveStatus::Solved;
  return ans;
}

PrimitiveAnswer solve_primitive(const PrimitiveQuery& q, const PrimitiveOptions& opt) {
  return q.metric->is_euclidean() ? solve_euclidean(q, opt) : solve_polygonal(q, opt);
}

}  // namespace smvd
