#include "smvd/render.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "smvd/region_algebra.hpp"

namespace smvd {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct View {
  double xmin, ymax, s;
  std::string x(double v) const { return num((v - xmin) * s); }
  std::string y(double v) const { return num((ymax - v) * s); }
  std::string pt(Point p) const { return x(p.x) + ' ' + y(p.y); }
};

// The y axis is flipped, so a counterclockwise arc is drawn with sweep-flag 1.
void arc_to(std::string& path, const View& v, const Arc& a, double start, double sweep) {
  const Point end = polar(a.center, a.radius, start + sweep);
  const std::string r = num(a.radius * v.s);
  path += " A " + r + ' ' + r + " 0 " + (std::abs(sweep) > kPi ? "1 " : "0 ") + (sweep > 0 ? "1 " : "0 ") + v.pt(end);
}

std::string loop_path(const ArcSegBoundary& loop, const View& v) {
  std::string p;
  if (loop.elements.empty()) return p;
  p += "M " + v.pt(start_point(loop.elements.front()));
  for (const Edge& e : loop.elements) {
    if (!e.is_arc()) {
      p += " L " + v.pt(e.segment().b);
      continue;
    }
    const Arc& a = e.arc();
    if (a.full()) {
      // Two halves: a single arc command cannot close on itself.
      arc_to(p, v, a, a.start, 0.5 * a.sweep);
      arc_to(p, v, a, a.start + 0.5 * a.sweep, 0.5 * a.sweep);
    } else {
      arc_to(p, v, a, a.start, a.sweep);
    }
  }
  return p + " Z";
}

std::string hex(double r, double g, double b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r * 255)),
                static_cast<int>(std::lround(g * 255)), static_cast<int>(std::lround(b * 255)));
  return buf;
}

}  // namespace

std::string site_color(int id, const std::string& palette) {
  if (palette == "grey") {
    const double l = 0.35 + 0.5 * std::fmod(id * 0.618033988749895, 1.0);
    return hex(l, l, l);
  }
  if (palette != "hue") throw Error(ErrorCode::InvalidInput, "unknown palette '" + palette + "'");
  // Golden-angle hue walk, fixed saturation and value.
  const double h = std::fmod(id * 137.50776405003785, 360.0) / 60.0;
  const double s = 0.55, val = 0.92, c = val * s;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = val - c;
  return hex(r + m, g + m, b + m);
}

void render_svg(std::ostream& out, const StableDiagram& d, const RenderOptions& opt) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (Point p : d.bbox.vertices) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  const View v{b.xmin, b.ymax, opt.width / (b.xmax - b.xmin)};
  const double w = opt.width, h = (b.ymax - b.ymin) * v.s;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  out << "<rect width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"#ffffff\"/>\n";

  for (const SiteRegion& r : d.regions) {
    const auto parent = containment_tree(r.loops);
    const std::string color = site_color(r.id, opt.palette);
    for (std::size_t i = 0; i < r.loops.size(); ++i) {
      if (green_area(r.loops[i].elements) <= 0.0) continue;
      std::string path = loop_path(r.loops[i], v);
      for (std::size_t j = 0; j < r.loops.size(); ++j)
        if (parent[j] == static_cast<int>(i) && green_area(r.loops[j].elements) < 0.0)
          path += ' ' + loop_path(r.loops[j], v);
      out << "<path class=\"face\" data-site=\"" << r.id << "\" d=\"" << path << "\" fill=\"" << color
          << "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
    }
  }

  if (opt.show_voronoi) {
    std::vector<Site> sites;
    for (const SiteRegion& r : d.regions) sites.push_back({r.id, r.position, r.appetite});
    VoronoiOptions vo;
    vo.parallel = false;
    vo.bisector.allow_degenerate = true;
    vo.bisector.eps = d.tol.eps_join;
    const auto vd = VoronoiDiagram::build(d.metric, sites, d.bbox, vo);
    for (const Site& s : sites) {
      const TaggedPolygon& c = vd.cell(s.id);
      const std::size_t n = c.vertices.size();
      for (std::size_t k = 0; k < n; ++k) {
        // Each shared edge is drawn once, from the lower id.
        const CurveTag& t = c.tags[k];
        if (t.kind != CurveKind::Bisector || t.a != s.id) continue;
        out << "<path class=\"voronoi\" d=\"M " << v.pt(c.vertices[k]) << " L " << v.pt(c.vertices[(k + 1) % n])
            << "\" stroke=\"#000000\" stroke-width=\"3\" fill=\"none\"/>\n";
      }
    }
  }
  if (opt.show_disks) {
    for (const SiteRegion& r : d.regions) {
      std::string path;
      if (d.metric.is_euclidean()) {
        ArcSegBoundary c;
        c.elements.push_back({Arc{r.position, r.radius, 0.0, kTwoPi}, CurveTag::ball(r.id)});
        path = loop_path(c, v);
      } else {
        const auto poly = d.metric.ball_polygon(r.position, r.radius, CurveTag::ball(r.id));
        path = "M " + v.pt(poly.vertices[0]);
        for (std::size_t k = 1; k < poly.vertices.size(); ++k) path += " L " + v.pt(poly.vertices[k]);
        path += " Z";
      }
      out << "<path class=\"disk\" d=\"" << path
          << "\" stroke=\"#333333\" stroke-dasharray=\"4 3\" stroke-width=\"1\" fill=\"none\"/>\n";
    }
  }
  for (const SiteRegion& r : d.regions)
    out << "<circle class=\"site\" cx=\"" << v.x(r.position.x) << "\" cy=\"" << v.y(r.position.y)
        << "\" r=\"2\" fill=\"#000000\"/>\n";
  out << "</svg>\n";
}

}  // namespace smvd
