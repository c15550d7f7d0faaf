#include "smvd/voronoi.hpp"

#include <algorithm>
#include <numeric>

#include "smvd/parallel.hpp"

namespace smvd {

namespace {

TaggedPolygon to_polygon(const ArcSegBoundary& loop) {
  TaggedPolygon p;
  for (const Edge& e : loop.elements) {
    p.vertices.push_back(e.segment().a);
    p.tags.push_back(e.tag);
  }
  return p;
}

}  // namespace

VoronoiDiagram VoronoiDiagram::build(const Metric& m, std::vector<Site> sites, const ConvexPolygon& bbox,
                                     const VoronoiOptions& opt) {
  if (sites.empty()) throw Error(ErrorCode::InvalidInput, "Voronoi diagram needs at least one site");
  const double eps = opt.bisector.eps;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!bbox.contains(sites[i].position))
      throw Error(ErrorCode::InvalidInput, "site outside the working box");
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[i].id == sites[j].id) throw Error(ErrorCode::InvalidInput, "repeated site id");
      if (dist(sites[i].position, sites[j].position) <= eps)
        throw Error(ErrorCode::DuplicateSites, "two sites share a position");
    }
  }

  VoronoiDiagram v;
  v.metric_ = m;
  v.bbox_ = bbox;
  v.sites_ = std::move(sites);
  v.opt_ = opt;
  const std::size_t n = v.sites_.size();

  if (!m.is_euclidean()) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) pairs.emplace_back(i, j);
    std::vector<TaggedPolygon> doms(pairs.size());
    parallel_for(pairs.size(), opt.parallel, [&](std::size_t k) {
      const Site& s = v.sites_[pairs[k].first];
      const Site& t = v.sites_[pairs[k].second];
      doms[k] = bisector(m, s.position, t.position, bbox, s.id, t.id, opt.bisector).dominance;
    });
    auto cache = std::make_shared<DominanceCache>();
    for (std::size_t k = 0; k < pairs.size(); ++k)
      cache->emplace(std::pair{v.sites_[pairs[k].first].id, v.sites_[pairs[k].second].id}, std::move(doms[k]));
    v.dom_ = std::move(cache);
  }

  v.cells_.resize(n);
  parallel_for(n, opt.parallel, [&](std::size_t i) { v.cells_[i] = v.compute_cell(i); });
  return v;
}

std::size_t VoronoiDiagram::index_of(int id) const {
  for (std::size_t i = 0; i < sites_.size(); ++i)
    if (sites_[i].id == id) return i;
  throw Error(ErrorCode::UnknownSite, "site " + std::to_string(id) + " is not in the diagram");
}

bool VoronoiDiagram::contains(int id) const {
  return std::any_of(sites_.begin(), sites_.end(), [&](const Site& s) { return s.id == id; });
}

const TaggedPolygon& VoronoiDiagram::cell(int id) const { return cells_[index_of(id)]; }

const TaggedPolygon& VoronoiDiagram::dominance(std::size_t s, std::size_t t) const {
  return dom_->at({sites_[s].id, sites_[t].id});
}

int VoronoiDiagram::nearest(Point p) const {
  int best = sites_.front().id;
  double best_d = metric_.distance(sites_.front().position, p);
  for (const Site& s : sites_) {
    const double d = metric_.distance(s.position, p);
    if (d < best_d || (d == best_d && s.id < best)) {
      best = s.id;
      best_d = d;
    }
  }
  return best;
}

TaggedPolygon VoronoiDiagram::compute_cell(std::size_t idx) const {
  const Site& s = sites_[idx];
  std::vector<std::size_t> others;
  std::vector<double> d(sites_.size(), 0.0);
  for (std::size_t j = 0; j < sites_.size(); ++j) {
    if (j == idx) continue;
    others.push_back(j);
    d[j] = metric_.distance(s.position, sites_[j].position);
  }
  std::sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  auto reach = [&](const TaggedPolygon& poly) {
    double r = 0.0;
    for (Point q : poly.vertices) r = std::max(r, metric_.distance(s.position, q));
    return r;
  };
  const double eps = opt_.bisector.eps;

  if (metric_.is_euclidean()) {
    // A site farther than twice the current reach cannot cut the cell.
    TaggedPolygon poly = TaggedPolygon::from_convex(bbox_);
    for (std::size_t j : others) {
      if (d[j] > 2.0 * reach(poly) + eps) break;
      poly = clip(poly, HalfPlane::closer_to(s.position, sites_[j].position),
                  CurveTag::bisector(s.id, sites_[j].id));
      if (poly.empty()) throw Error(ErrorCode::TopologyError, "empty Voronoi cell");
    }
    return poly;
  }

  const Shape box = Shape::polygon(TaggedPolygon::from_convex(bbox_));
  auto intersect = [&](std::span<const std::size_t> with) {
    std::vector<Shape> shapes;
    shapes.reserve(with.size() + 1);
    shapes.push_back(box);
    for (std::size_t j : with) shapes.push_back(Shape::polygon(dominance(idx, j)));
    std::vector<Literal> lits;
    for (const Shape& sh : shapes) lits.push_back({&sh, false});
    auto loops = assemble_loops(intersection_boundary(lits, eps), eps);
    if (loops.size() != 1) throw Error(ErrorCode::TopologyError, "polygonal Voronoi cell is not one loop");
    merge_collinear(loops.front(), eps);
    return to_polygon(loops.front());
  };

  const std::size_t first = std::min<std::size_t>(others.size(), 6);
  TaggedPolygon poly = intersect(std::span(others).first(first));
  const double r = reach(poly);
  std::vector<std::size_t> relevant(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(first));
  for (std::size_t k = first; k < others.size(); ++k)
    if (d[others[k]] <= 2.0 * r + eps) relevant.push_back(others[k]);
  if (relevant.size() > first) poly = intersect(relevant);
  return poly;
}

VoronoiDiagram VoronoiDiagram::remove_site(int id) const {
  const std::size_t gone = index_of(id);
  if (sites_.size() == 1) throw Error(ErrorCode::InvalidInput, "cannot remove the last site");
  VoronoiDiagram v = *this;
  v.sites_.erase(v.sites_.begin() + static_cast<std::ptrdiff_t>(gone));
  v.cells_.erase(v.cells_.begin() + static_cast<std::ptrdiff_t>(gone));
  ++v.generation_;
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < v.cells_.size(); ++i) {
    const auto& tags = v.cells_[i].tags;
    if (std::any_of(tags.begin(), tags.end(), [&](const CurveTag& t) {
          return t.kind == CurveKind::Bisector && (t.a == id || t.b == id);
        }))
      touched.push_back(i);
  }
  parallel_for(touched.size(), opt_.parallel,
               [&](std::size_t k) { v.cells_[touched[k]] = v.compute_cell(touched[k]); });
  return v;
}

}  // namespace smvd
