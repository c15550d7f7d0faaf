#include "smvd/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "smvd/oracle_grid.hpp"
#include "smvd/parallel.hpp"

namespace smvd {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Box diagram_box(const StableDiagram& d) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (Point p : d.bbox.vertices) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

Box loops_box(const std::vector<ArcSegBoundary>& loops) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (const auto& l : loops)
    for (const Edge& e : l.elements) {
      const Box eb = bounds(e);
      b.xmin = std::min(b.xmin, eb.xmin);
      b.ymin = std::min(b.ymin, eb.ymin);
      b.xmax = std::max(b.xmax, eb.xmax);
      b.ymax = std::max(b.ymax, eb.ymax);
    }
  return b;
}

Point sample(const Edge& e, double t) {
  return e.is_arc() ? e.arc().at(t) : lerp(e.segment().a, e.segment().b, t);
}

constexpr int kEdgeSamples = 16;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

double ball_residual(const StableDiagram& d, int site, const Edge& e) {
  const SiteRegion& r = d.region(site);
  double worst = 0.0;
  for (int k = 0; k <= kEdgeSamples; ++k)
    worst = std::max(worst, std::abs(d.metric.distance(r.position, sample(e, double(k) / kEdgeSamples)) - r.radius));
  return worst;
}

double bisector_residual(const StableDiagram& d, int s, int t, const Edge& e) {
  const Point a = d.region(s).position, b = d.region(t).position;
  double worst = 0.0;
  for (int k = 0; k <= kEdgeSamples; ++k) {
    const Point p = sample(e, double(k) / kEdgeSamples);
    worst = std::max(worst, std::abs(d.metric.distance(a, p) - d.metric.distance(b, p)));
  }
  return worst;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CheckResult area_audit(const StableDiagram& d, double tol_rel) {
  CheckResult c{"area_audit", true, 0.0, ""};
  int worst_site = -1;
  for (const SiteRegion& r : d.regions) {
    const double area = loops_area(r.loops);
    double err = std::abs(area - r.appetite) / r.appetite;
    std::vector<Edge> all;
    for (const auto& l : r.loops) all.insert(all.end(), l.elements.begin(), l.elements.end());
    const double reach = farthest_distance(d.metric, r.position, all);
    err = std::max(err, std::abs(reach - r.radius) / r.radius);
    if (err > c.value) {
      c.value = err;
      worst_site = r.id;
    }
  }
  c.passed = c.value <= tol_rel;
  c.detail = "worst relative error " + fmt("%.3g", c.value) + (worst_site >= 0 ? " at site " + std::to_string(worst_site) : "");
  return c;
}

double taxonomy_residual(const StableDiagram& d, int owner, const Edge& e) {
  const int right = right_owner(d, e);
  if (e.is_arc()) {
    // The circle belongs to the site on the convex side.
    const int convex = e.arc().sweep > 0 ? owner : right;
    return convex == kUnmatched ? kInfinity : ball_residual(d, convex, e);
  }
  double best = right == kUnmatched ? kInfinity : bisector_residual(d, owner, right, e);
  if (!d.metric.is_euclidean()) {
    // Polygonal balls have straight sides.
    best = std::min(best, ball_residual(d, owner, e));
    if (right != kUnmatched) best = std::min(best, ball_residual(d, right, e));
  }
  return best;
}

CheckResult edge_taxonomy(const StableDiagram& d, double tol) {
  CheckResult c{"edge_taxonomy", true, 0.0, ""};
  long straight = 0, curved = 0, bad = 0;
  for (const SiteRegion& r : d.regions)
    for (const auto& l : r.loops)
      for (const Edge& e : l.elements) {
        (e.is_arc() ? curved : straight)++;
        const double res = taxonomy_residual(d, r.id, e);
        c.value = std::max(c.value, res);
        if (!(res <= tol)) ++bad;
      }
  c.passed = bad == 0;
  c.detail = std::to_string(straight) + " straight, " + std::to_string(curved) + " curved, " + std::to_string(bad) +
             " off their curve; worst residual " + fmt("%.3g", c.value);
  return c;
}

int region_at(const StableDiagram& d, Point p) {
  for (const SiteRegion& r : d.regions) {
    const Box b = loops_box(r.loops);
    if (p.x < b.xmin || p.x > b.xmax || p.y < b.ymin || p.y > b.ymax) continue;
    if (winding_number(r.loops, p) != 0) return r.id;
  }
  return kUnmatched;
}

CheckResult stability_sampling(const StableDiagram& d, long samples, std::uint64_t seed, double min_fraction,
                               bool parallel) {
  const Box b = diagram_box(d);
  constexpr long kChunk = 4096;
  const long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long> used(chunks, 0), agree(chunks, 0);
  parallel_for(static_cast<std::size_t>(chunks), parallel, [&](std::size_t k) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + k);
    std::uniform_real_distribution<double> ux(b.xmin, b.xmax), uy(b.ymin, b.ymax);
    const long count = std::min(kChunk, samples - static_cast<long>(k) * kChunk);
    for (long i = 0; i < count; ++i) {
      const Point p{ux(rng), uy(rng)};
      const Classification cl = classify_point(d, p);
      if (cl.ambiguous) continue;
      ++used[k];
      if (region_at(d, p) == cl.site) ++agree[k];
    }
  });
  long u = 0, a = 0;
  for (long k = 0; k < chunks; ++k) {
    u += used[k];
    a += agree[k];
  }
  CheckResult c{"stability_sampling", false, u > 0 ? double(a) / double(u) : 1.0, ""};
  c.passed = c.value >= min_fraction;
  c.detail = std::to_string(a) + " of " + std::to_string(u) + " samples agree";
  return c;
}

VerifyReport verify(const std::vector<Site>& sites, const StableDiagram& d, const VerifyOptions& opt) {
  VerifyReport rep;
  CheckResult match{"instance_match", true, 0.0, "diagram sites match the instance"};
  if (sites.size() != d.regions.size()) {
    match.passed = false;
    match.detail = "site count differs";
  } else {
    for (const Site& s : sites) {
      bool found = false;
      for (const SiteRegion& r : d.regions)
        if (r.id == s.id && r.position == s.position && r.appetite == s.appetite) found = true;
      if (!found) {
        match.passed = false;
        match.detail = "site " + std::to_string(s.id) + " differs";
      }
    }
  }
  rep.checks.push_back(match);
  rep.checks.push_back(area_audit(d, opt.area_tol_rel));
  rep.checks.push_back(edge_taxonomy(d, opt.taxonomy_tol));
  rep.checks.push_back(stability_sampling(d, opt.samples, opt.seed, opt.stability_min, opt.parallel));
  if (opt.grid_resolution > 0) {
    const auto g = simulate(sites, grid_config_for(d, opt.grid_resolution));
    AgreementOptions ao;
    ao.parallel = opt.parallel;
    const Agreement a = agreement(d, g, ao);
    CheckResult c{"grid_agreement", a.fraction >= opt.grid_min, a.fraction, ""};
    c.detail = std::to_string(a.agreeing) + " of " + std::to_string(a.compared) + " pixels agree at resolution " +
               std::to_string(opt.grid_resolution);
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace smvd
