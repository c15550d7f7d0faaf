#include "smvd/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "smvd/parallel.hpp"

namespace smvd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Box polygon_box(const TaggedPolygon& p) {
  Box b{p.vertices[0].x, p.vertices[0].y, p.vertices[0].x, p.vertices[0].y};
  for (Point v : p.vertices) {
    b.xmin = std::min(b.xmin, v.x);
    b.ymin = std::min(b.ymin, v.y);
    b.xmax = std::max(b.xmax, v.x);
    b.ymax = std::max(b.ymax, v.y);
  }
  return b;
}

Point point_at(const Edge& e, double t) {
  if (e.is_arc()) return e.arc().at(t);
  return lerp(e.segment().a, e.segment().b, t);
}

double eps_area(const PartialDiagram& s, std::size_t idx) {
  return s.config.tol.eps_area_rel * s.sites[idx].appetite;
}

}  // namespace

std::size_t PartialDiagram::index_of(int id) const {
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (sites[i].id == id) return i;
  throw Error(ErrorCode::UnknownSite, "site " + std::to_string(id) + " is not in the instance");
}

const SiteRegion& StableDiagram::region(int id) const {
  for (const SiteRegion& r : regions)
    if (r.id == id) return r;
  throw Error(ErrorCode::UnknownSite, "site " + std::to_string(id) + " is not in the diagram");
}

ConvexPolygon working_bbox(const std::vector<Site>& sites, const Metric& m, double scale) {
  Point c{0, 0};
  double total = 0.0;
  for (const Site& s : sites) {
    c = c + s.position;
    total += s.appetite;
  }
  c = (1.0 / static_cast<double>(sites.size())) * c;
  double spread = 0.0;
  for (const Site& s : sites) spread = std::max(spread, dist(c, s.position));
  // An open ball around s of radius r*(s) is fully matched, so its area is at
  // most the total appetite.
  const double reach = std::sqrt(total / m.ball_area(1.0)) * m.ball_extent();
  const double half = (spread + reach) * scale;
  return ConvexPolygon::axis_box(c - Point{half, half}, c + Point{half, half});
}

PartialDiagram initial_state(const std::vector<Site>& sites, const Metric& m, const SolverConfig& cfg) {
  if (sites.empty()) throw Error(ErrorCode::InvalidInput, "instance has no sites");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i].id < 0) throw Error(ErrorCode::InvalidInput, "site ids must be nonnegative");
    if (!(sites[i].appetite > 0.0) || !std::isfinite(sites[i].appetite))
      throw Error(ErrorCode::InvalidInput, "appetites must be positive and finite");
    for (std::size_t j = 0; j < i; ++j)
      if (sites[i].id == sites[j].id) throw Error(ErrorCode::InvalidInput, "repeated site id");
  }
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  PartialDiagram s;
  s.metric = m;
  s.config = cfg;
  s.sites = sites;
  s.bbox = cfg.bbox ? *cfg.bbox : working_bbox(sites, m, cfg.bbox_scale);
  const auto& bv = s.bbox.vertices;
  double half = 0.0;
  for (Point v : bv) half = std::max(half, 0.5 * std::max(std::abs(v.x - bv[0].x), std::abs(v.y - bv[0].y)));
  s.scale = half;
  const std::size_t n = sites.size();
  s.edges.resize(n);
  s.assigned.assign(n, 0.0);
  s.remaining.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.remaining[i] = sites[i].appetite;
  s.radius.assign(n, kInf);
  s.committed = BallUnion(m, cfg.tol.eps_join);
  VoronoiOptions vo;
  vo.parallel = cfg.parallel;
  vo.bisector.allow_degenerate = cfg.allow_degenerate_bisectors;
  vo.bisector.eps = cfg.tol.eps_join;
  s.voronoi = VoronoiDiagram::build(m, sites, s.bbox, vo);
  return s;
}

double farthest_distance(const Metric& m, Point center, std::span<const Edge> edges) {
  double best = 0.0;
  for (const Edge& e : edges) {
    best = std::max({best, m.distance(center, start_point(e)), m.distance(center, end_point(e))});
    if (e.is_arc()) {
      const Arc& a = e.arc();
      const Point away = a.center - center;
      const double ang = norm(away) > 0.0 ? std::atan2(away.y, away.x) : a.start;
      if (a.full() || arc_covers(a, ang)) best = std::max(best, m.distance(center, polar(a.center, a.radius, ang)));
    }
  }
  return best;
}

double estimate_radius(const PartialDiagram& state, int id) {
  const std::size_t idx = state.index_of(id);
  if (state.radius[idx] < kInf) throw Error(ErrorCode::InvalidInput, "site is already ordered");
  if (state.remaining[idx] <= eps_area(state, idx))
    return farthest_distance(state.metric, state.sites[idx].position, state.edges[idx]);
  PrimitiveQuery q;
  q.metric = &state.metric;
  q.cell = state.voronoi->cell(id);
  q.site = state.sites[idx].position;
  q.appetite = state.remaining[idx];
  q.obstructions = state.committed.overlapping(polygon_box(q.cell));
  PrimitiveOptions opt;
  opt.eps_area_rel = state.config.tol.eps_area_rel * state.sites[idx].appetite / state.remaining[idx];
  opt.eps_radius = state.config.tol.eps_radius_rel * state.scale;
  opt.eps = state.config.tol.eps_join;
  const PrimitiveAnswer a = solve_primitive(q, opt);
  return a.status == PrimitiveStatus::Solved ? a.radius : kInf;
}

PartialDiagram step(PartialDiagram state) {
  if (state.done()) throw Error(ErrorCode::InvalidInput, "all sites are already ordered");
  const int iteration = state.iteration + 1;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < state.sites.size(); ++i)
    if (state.radius[i] == kInf) open.push_back(i);

  std::vector<double> est(open.size());
  parallel_for(open.size(), state.config.parallel,
               [&](std::size_t k) { est[k] = estimate_radius(state, state.sites[open[k]].id); });
  state.primitive_calls += static_cast<long>(open.size());

  std::size_t pick = open.size();
  for (std::size_t k = 0; k < open.size(); ++k) {
    const std::size_t i = open[k];
    state.estimates.push_back({iteration, state.sites[i].id, est[k]});
    // Sites already fed by earlier balls go first.
    const bool fed = state.remaining[i] <= eps_area(state, i);
    if (pick == open.size()) {
      pick = k;
      continue;
    }
    const std::size_t j = open[pick];
    const bool pick_fed = state.remaining[j] <= eps_area(state, j);
    if (fed != pick_fed) {
      if (fed) pick = k;
      continue;
    }
    if (est[k] < est[pick] || (est[k] == est[pick] && state.sites[i].id < state.sites[j].id)) pick = k;
  }
  if (!(est[pick] < kInf)) throw Error(ErrorCode::InfeasibleState, "every estimate radius is infinite");

  const std::size_t si = open[pick];
  const Site& s = state.sites[si];
  double r = est[pick];
  // Selected radii are nondecreasing in exact arithmetic; a shortfall within
  // the radius tolerance is roundoff between tied sites.
  if (!state.order.empty()) {
    const double last = state.radius[state.index_of(state.order.back())];
    if (r < last && last - r <= state.config.tol.eps_radius_rel * state.scale) r = last;
  }
  state.radius[si] = r;
  state.order.push_back(s.id);

  if (r > 0.0) {
    const Ball ball{s.position, r, s.id};
    const CarvedRegion carved = carve(ball, state.committed, state.metric);
    PartitionOptions po;
    po.parallel = state.config.parallel;
    po.assemble = false;
    po.eps = state.config.tol.eps_join;
    for (auto& [id, piece] : partition_by_voronoi(carved, *state.voronoi, po)) {
      const std::size_t t = state.index_of(id);
      state.assigned[t] += piece.area;
      state.remaining[t] -= piece.area;
      auto& dst = state.edges[t];
      dst.insert(dst.end(), piece.edges.begin(), piece.edges.end());
    }
    state.committed = state.committed.add_ball(ball);
  }

  if (open.size() > 1) {
    state.voronoi = state.voronoi->remove_site(s.id);
  } else {
    state.voronoi.reset();
  }
  state.iteration = iteration;
  return state;
}

// ---------------------------------------------------------------------------
// Glue

namespace {

struct Interval {
  double a = 0.0, b = 0.0;  // parameter range, a < b
  int sign = 0;
};

// Cancels overlapping opposite fragments on one supporting line and merges
// the rest into maximal runs. Fragments shorter than `tol` are dropped.
void glue_line(const std::vector<const Edge*>& group, double tol, std::vector<Edge>& out) {
  const Segment& ref = group.front()->segment();
  Point d = ref.b - ref.a;
  d = (1.0 / norm(d)) * d;
  const Point o = ref.a;
  std::vector<Interval> iv;
  std::vector<double> cuts;
  for (const Edge* e : group) {
    const double t0 = dot(e->segment().a - o, d), t1 = dot(e->segment().b - o, d);
    iv.push_back({std::min(t0, t1), std::max(t0, t1), t1 > t0 ? 1 : -1});
    cuts.push_back(t0);
    cuts.push_back(t1);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> pts;
  for (double c : cuts)
    if (pts.empty() || c - pts.back() > tol) pts.push_back(c);

  std::vector<Interval> runs;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double m = 0.5 * (pts[k] + pts[k + 1]);
    int net = 0;
    for (const Interval& i : iv)
      if (i.a < m && m < i.b) net += i.sign;
    if (net == 0) continue;
    const int sign = net > 0 ? 1 : -1;
    if (!runs.empty() && runs.back().sign == sign && runs.back().b == pts[k]) {
      runs.back().b = pts[k + 1];
    } else {
      runs.push_back({pts[k], pts[k + 1], sign});
    }
  }
  for (const Interval& r : runs) {
    const Point a = o + r.a * d, b = o + r.b * d;
    out.push_back({r.sign > 0 ? Segment{a, b} : Segment{b, a}, group.front()->tag});
  }
}

void glue_circle(const std::vector<const Edge*>& group, double tol, std::vector<Edge>& out) {
  const Arc& ref = group.front()->arc();
  const double atol = tol / ref.radius;
  struct A {
    double lo, len;
    int sign;
    bool full;
  };
  std::vector<A> arcs;
  std::vector<double> cuts;
  for (const Edge* e : group) {
    const Arc& a = e->arc();
    const int sign = a.sweep > 0 ? 1 : -1;
    if (a.full()) {
      arcs.push_back({0.0, kTwoPi, sign, true});
      continue;
    }
    const double lo = wrap_angle(sign > 0 ? a.start : a.start + a.sweep);
    arcs.push_back({lo, std::abs(a.sweep), sign, false});
    cuts.push_back(lo);
    cuts.push_back(wrap_angle(lo + std::abs(a.sweep)));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> pts;
  for (double c : cuts)
    if (pts.empty() || c - pts.back() > atol) pts.push_back(c);
  if (pts.size() > 1 && pts.front() + kTwoPi - pts.back() <= atol) pts.pop_back();

  auto net_at = [&](double ang) {
    int net = 0;
    for (const A& a : arcs)
      if (a.full || wrap_angle(ang - a.lo) < a.len) net += a.sign;
    return net;
  };
  auto emit = [&](double a, double b, int sign) {
    const Arc arc{ref.center, ref.radius, a, b - a};
    Edge e{arc, group.front()->tag};
    out.push_back(sign > 0 ? e : reversed(e));
  };

  if (pts.empty()) {
    const int net = net_at(0.0);
    if (net != 0) out.push_back({Arc{ref.center, ref.radius, 0.0, net > 0 ? kTwoPi : -kTwoPi}, group.front()->tag});
    return;
  }
  const std::size_t n = pts.size();
  std::vector<Interval> runs;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = pts[k], b = k + 1 < n ? pts[k + 1] : pts[0] + kTwoPi;
    const int net = net_at(0.5 * (a + b));
    if (net == 0) continue;
    const int sign = net > 0 ? 1 : -1;
    if (!runs.empty() && runs.back().sign == sign && runs.back().b == a) {
      runs.back().b = b;
    } else {
      runs.push_back({a, b, sign});
    }
  }
  // Close the cycle.
  if (runs.size() > 1 && runs.back().sign == runs.front().sign &&
      std::abs(runs.back().b - (runs.front().a + kTwoPi)) <= 1e-15) {
    runs.front().a = runs.back().a - kTwoPi;
    runs.pop_back();
  }
  if (runs.size() == 1 && runs.front().b - runs.front().a >= kTwoPi - 1e-15) {
    out.push_back({Arc{ref.center, ref.radius, 0.0, runs.front().sign > 0 ? kTwoPi : -kTwoPi}, group.front()->tag});
    return;
  }
  for (const Interval& r : runs) emit(r.a, r.b, r.sign);
}

// Fragments of one site grouped by supporting curve.
std::vector<Edge> cancel_fragments(const std::vector<Edge>& edges, double tol) {
  struct Group {
    CurveTag tag;
    bool arc;
    Point key;  // circle: center; line: unit direction
    double key2;  // circle: radius; line: offset
    std::vector<const Edge*> members;
  };
  std::vector<Group> groups;
  for (const Edge& e : edges) {
    if (length(e) <= 0.0) continue;
    Point key;
    double key2;
    if (e.is_arc()) {
      key = e.arc().center;
      key2 = e.arc().radius;
    } else {
      Point d = e.segment().b - e.segment().a;
      d = (1.0 / norm(d)) * d;
      if (d.x < 0.0 || (d.x == 0.0 && d.y < 0.0)) d = -d;
      key = d;
      key2 = cross(d, e.segment().a);
    }
    Group* g = nullptr;
    for (Group& c : groups) {
      if (c.tag != e.tag || c.arc != e.is_arc()) continue;
      const bool same = c.arc ? dist(c.key, key) <= tol && std::abs(c.key2 - key2) <= tol
                              : std::abs(cross(c.key, key)) <= 1e-9 && std::abs(c.key2 - key2) <= tol;
      if (same) {
        g = &c;
        break;
      }
    }
    if (!g) {
      groups.push_back({e.tag, e.is_arc(), key, key2, {}});
      g = &groups.back();
    }
    g->members.push_back(&e);
  }
  std::vector<Edge> out;
  for (const Group& g : groups) (g.arc ? glue_circle : glue_line)(g.members, tol, out);
  // Drop what is left of near-coincident slivers.
  std::erase_if(out, [&](const Edge& e) { return length(e) <= tol; });
  return out;
}

double probe_offset(const StableDiagram& d) {
  double half = 0.0;
  for (Point v : d.bbox.vertices) half = std::max(half, dist(v, d.bbox.vertices[0]));
  return 1e-9 * std::max(1.0, half);
}

}  // namespace

int right_owner(const StableDiagram& d, const Edge& e, double t) {
  const Point p = point_at(e, t);
  const Point tau = tangent(e, t);
  const Point q = p + probe_offset(d) * Point{tau.y, -tau.x};
  return classify_point(d, q).site;
}

StableDiagram glue(const PartialDiagram& state) {
  if (!state.done()) throw Error(ErrorCode::InvalidInput, "glue needs a complete ordering");
  const double tol = state.config.tol.eps_join;
  StableDiagram d;
  d.metric = state.metric;
  d.bbox = state.bbox;
  d.tol = state.config.tol;
  const std::size_t n = state.sites.size();
  for (std::size_t i = 0; i < n; ++i) {
    SiteRegion r;
    r.id = state.sites[i].id;
    r.position = state.sites[i].position;
    r.appetite = state.sites[i].appetite;
    r.radius = state.radius[i];
    r.order = static_cast<int>(std::find(state.order.begin(), state.order.end(), r.id) - state.order.begin()) + 1;
    d.regions.push_back(std::move(r));
  }

  std::vector<std::vector<Edge>> frags(n);
  parallel_for(n, state.config.parallel, [&](std::size_t i) { frags[i] = cancel_fragments(state.edges[i], tol); });

  // Vertices of every site split the fragments of every other site, so that
  // each final element has a single region on its right.
  std::vector<Point> cand;
  for (const auto& f : frags)
    for (const Edge& e : f)
      if (!(e.is_arc() && e.arc().full())) {
        cand.push_back(start_point(e));
        cand.push_back(end_point(e));
      }
  std::sort(cand.begin(), cand.end(), [](Point a, Point b) { return a.x < b.x; });
  const double vtol = 10.0 * tol;

  std::vector<std::vector<Edge>> elems(n);
  parallel_for(n, state.config.parallel, [&](std::size_t i) {
    for (const Edge& e : frags[i]) {
      const Box bx = bounds(e);
      const bool full = e.is_arc() && e.arc().full();
      const double len = length(e);
      std::vector<double> ts;
      auto lo = std::lower_bound(cand.begin(), cand.end(), bx.xmin - vtol, [](Point p, double x) { return p.x < x; });
      for (auto it = lo; it != cand.end() && it->x <= bx.xmax + vtol; ++it) {
        if (it->y < bx.ymin - vtol || it->y > bx.ymax + vtol) continue;
        if (distance_to(e, *it) > vtol) continue;
        const double t = parameter_of(e, *it);
        if (!full && (t * len <= vtol || (1.0 - t) * len <= vtol)) continue;
        ts.push_back(t);
      }
      std::sort(ts.begin(), ts.end());
      std::vector<double> cuts;
      for (double t : ts)
        if (cuts.empty() || (t - cuts.back()) * len > vtol) cuts.push_back(t);
      if (full && cuts.size() > 1 && (cuts.front() + 1.0 - cuts.back()) * len <= vtol) cuts.pop_back();

      std::vector<std::pair<double, double>> spans;
      if (full) {
        if (cuts.empty()) {
          elems[i].push_back(e);
          continue;
        }
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) spans.emplace_back(cuts[k], cuts[k + 1]);
        spans.emplace_back(cuts.back(), cuts.front() + 1.0);
      } else {
        double prev = 0.0;
        for (double t : cuts) {
          spans.emplace_back(prev, t);
          prev = t;
        }
        spans.emplace_back(prev, 1.0);
      }
      std::vector<int> label;
      for (const auto& [a, b] : spans) label.push_back(right_owner(d, e, 0.5 * (a + b)));
      // Merge neighbours with the same region on the right.
      std::vector<std::pair<double, double>> merged{spans[0]};
      std::vector<int> mlabel{label[0]};
      for (std::size_t k = 1; k < spans.size(); ++k) {
        if (label[k] == mlabel.back()) {
          merged.back().second = spans[k].second;
        } else {
          merged.push_back(spans[k]);
          mlabel.push_back(label[k]);
        }
      }
      if (full && merged.size() > 1 && mlabel.front() == mlabel.back()) {
        merged.front().first = merged.back().first - 1.0;
        merged.pop_back();
      }
      if (full && merged.size() == 1) {
        elems[i].push_back(e);
        continue;
      }
      for (const auto& [a, b] : merged) elems[i].push_back(sub_edge(e, a, b));
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    SiteRegion& r = d.regions[i];
    r.loops = assemble_loops(std::move(elems[i]), 10.0 * tol);
    r.area = loops_area(r.loops);
  }
  d.stats.primitive_calls = state.primitive_calls;
  d.stats.iterations = state.iteration;
  d.counts = count_complexity(d);
  return d;
}

StableDiagram solve(const std::vector<Site>& sites, const Metric& m, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  PartialDiagram s = initial_state(sites, m, cfg);
  while (!s.done()) s = step(std::move(s));
  StableDiagram d = glue(s);
  d.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return d;
}

Classification classify_point(const StableDiagram& d, Point p) {
  Classification c;
  double best = kInf;
  const double eps = d.tol.eps_join;
  for (const SiteRegion& r : d.regions) {
    const double dist_s = d.metric.distance(r.position, p);
    if (std::abs(dist_s - r.radius) <= eps) c.ambiguous = true;
    if (!(dist_s < r.radius)) continue;
    if (std::abs(dist_s - best) <= eps) c.ambiguous = true;
    if (dist_s < best || (dist_s == best && r.id < c.site)) {
      best = dist_s;
      c.site = r.id;
    }
  }
  return c;
}

Counts count_complexity(const StableDiagram& d) {
  Counts c;
  std::vector<Point> ends;
  for (const SiteRegion& r : d.regions) {
    for (const ArcSegBoundary& loop : r.loops) {
      if (green_area(loop.elements) > 0.0) ++c.faces;
      for (const Edge& e : loop.elements) {
        const int other = right_owner(d, e);
        if (other == kUnmatched || other > r.id) ++c.edges;
        if (!(e.is_arc() && e.arc().full())) {
          ends.push_back(start_point(e));
          ends.push_back(end_point(e));
        }
      }
    }
  }
  // Distinct endpoints, merged within the join tolerance.
  const double tol = 10.0 * d.tol.eps_join;
  std::sort(ends.begin(), ends.end(), [](Point a, Point b) { return a.x < b.x; });
  std::vector<bool> taken(ends.size(), false);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (taken[i]) continue;
    ++c.vertices;
    for (std::size_t j = i + 1; j < ends.size() && ends[j].x - ends[i].x <= tol; ++j)
      if (!taken[j] && dist(ends[i], ends[j]) <= tol) taken[j] = true;
  }
  return c;
}

}  // namespace smvd
