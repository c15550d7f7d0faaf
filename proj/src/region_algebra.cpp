#include "smvd/region_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "smvd/parallel.hpp"

namespace smvd {

BallUnion BallUnion::add_ball(const Ball& b, const Metric& m) const {
  if (!(m == metric_)) throw Error(ErrorCode::MetricMismatch, "ball metric differs from the union's");
  if (!(b.scale > 0.0)) throw Error(ErrorCode::InvalidInput, "ball scale must be positive");
  BallUnion u = *this;
  u.balls_.push_back(b);
  u.shapes_.push_back(std::make_shared<const Shape>(metric_.ball_shape(b.center, b.scale, CurveTag::ball(b.site))));
  std::vector<Shape> all;
  all.reserve(u.shapes_.size());
  for (const auto& s : u.shapes_) all.push_back(*s);
  u.loops_ = assemble_loops(union_boundary(all, eps_), 10.0 * eps_);
  u.area_ = loops_area(u.loops_);
  return u;
}

std::vector<const Shape*> BallUnion::overlapping(const Box& box) const {
  std::vector<const Shape*> out;
  for (const auto& s : shapes_)
    if (s->box().overlaps(box, eps_)) out.push_back(s.get());
  return out;
}

std::vector<int> containment_tree(const std::vector<ArcSegBoundary>& loops) {
  const std::size_t n = loops.size();
  std::vector<double> area(n);
  for (std::size_t i = 0; i < n; ++i) area[i] = std::abs(green_area(loops[i].elements));
  std::vector<int> parent(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point probe = mid_point(loops[i].elements.front());
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || area[j] <= area[i]) continue;
      const std::span<const ArcSegBoundary> one(&loops[j], 1);
      if (winding_number(one, probe) == 0) continue;
      if (parent[i] < 0 || area[j] < best) {
        parent[i] = static_cast<int>(j);
        best = area[j];
      }
    }
  }
  return parent;
}

CarvedRegion carve(const Ball& b, const BallUnion& u, const Metric& m) {
  if (!(m == u.metric())) throw Error(ErrorCode::MetricMismatch, "ball metric differs from the union's");
  CarvedRegion r;
  r.ball = std::make_shared<const Shape>(m.ball_shape(b.center, b.scale, CurveTag::ball(b.site)));
  r.obstructions = u.overlapping(r.ball->box());
  std::vector<Literal> lits{{r.ball.get(), false}};
  for (const Shape* s : r.obstructions) lits.push_back({s, true});
  const auto pieces = intersection_boundary(lits, 1e-9);
  r.area = green_area(pieces);
  r.faces = assemble_loops(pieces, 1e-8);
  r.parent = containment_tree(r.faces);
  return r;
}

RegionPiece clip_region(const Shape& cell, const Shape& ball, std::span<const Shape* const> obstructions,
                        double eps, bool assemble) {
  RegionPiece p;
  if (!cell.box().overlaps(ball.box(), eps)) return p;
  std::vector<Literal> lits{{&cell, false}, {&ball, false}};
  for (const Shape* s : obstructions)
    if (s->box().overlaps(ball.box(), eps) && s->box().overlaps(cell.box(), eps)) lits.push_back({s, true});
  p.edges = intersection_boundary(lits, eps);
  p.area = green_area(p.edges);
  if (assemble && !p.edges.empty()) p.loops = assemble_loops(p.edges, 10.0 * eps);
  return p;
}

std::map<int, RegionPiece> partition_by_voronoi(const CarvedRegion& r, const VoronoiDiagram& v,
                                                const PartitionOptions& opt) {
  std::map<int, RegionPiece> out;
  if (r.empty()) return out;
  const auto& sites = v.sites();
  std::vector<RegionPiece> pieces(sites.size());
  parallel_for(sites.size(), opt.parallel, [&](std::size_t i) {
    const Shape cell = Shape::polygon(v.cell(sites[i].id));
    pieces[i] = clip_region(cell, *r.ball, r.obstructions, opt.eps, opt.assemble);
  });
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (!pieces[i].edges.empty()) out.emplace(sites[i].id, std::move(pieces[i]));
  return out;
}

}  // namespace smvd
