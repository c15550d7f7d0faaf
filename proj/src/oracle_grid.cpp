#include "smvd/oracle_grid.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <tuple>

#include "smvd/parallel.hpp"

namespace smvd {

namespace {

// Pixels in increasing distance from one site, produced ring by ring.
class PixelStream {
 public:
  PixelStream(const GridConfig& cfg, Point site) : cfg_(cfg), site_(site) {
    px_ = (cfg.bbox.xmax - cfg.bbox.xmin) / cfg.resolution;
    col_ = std::clamp(static_cast<int>(std::floor((site.x - cfg.bbox.xmin) / px_)), 0, cfg.resolution - 1);
    row_ = std::clamp(static_cast<int>(std::floor((site.y - cfg.bbox.ymin) / px_)), 0, cfg.resolution - 1);
    extent_ = cfg.metric.ball_extent();
    last_ring_ = std::max({col_, row_, cfg.resolution - 1 - col_, cfg.resolution - 1 - row_});
  }

  // False once every pixel has been produced.
  bool next(double& d, int& pixel) {
    // Everything in rings beyond `ring_` is at least this far away.
    while (ring_ <= last_ring_ && (heap_.empty() || heap_.top().first > ring_bound(ring_ + 1))) push_ring(++ring_);
    if (heap_.empty()) return false;
    std::tie(d, pixel) = heap_.top();
    heap_.pop();
    return true;
  }

 private:
  double ring_bound(int k) const { return std::max(0.0, (k - 0.5) * px_) / extent_; }

  void push(int r, int c) {
    if (r < 0 || c < 0 || r >= cfg_.resolution || c >= cfg_.resolution) return;
    const Point p{cfg_.bbox.xmin + (c + 0.5) * px_, cfg_.bbox.ymin + (r + 0.5) * px_};
    heap_.emplace(cfg_.metric.distance(site_, p), r * cfg_.resolution + c);
  }

  void push_ring(int k) {
    if (k == 0) {
      push(row_, col_);
      return;
    }
    for (int c = col_ - k; c <= col_ + k; ++c) {
      push(row_ - k, c);
      push(row_ + k, c);
    }
    for (int r = row_ - k + 1; r <= row_ + k - 1; ++r) {
      push(r, col_ - k);
      push(r, col_ + k);
    }
  }

  const GridConfig& cfg_;
  Point site_;
  double px_ = 1.0, extent_ = 1.0;
  int row_ = 0, col_ = 0, ring_ = -1, last_ring_ = 0;
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, std::greater<>> heap_;
};

}  // namespace

Point GridAssignment::center(int row, int col) const {
  const double px = pixel_size();
  return {bbox.xmin + (col + 0.5) * px, bbox.ymin + (row + 0.5) * px};
}

GridConfig grid_config_for(const StableDiagram& d, int resolution) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (Point v : d.bbox.vertices) {
    b.xmin = std::min(b.xmin, v.x);
    b.ymin = std::min(b.ymin, v.y);
    b.xmax = std::max(b.xmax, v.x);
    b.ymax = std::max(b.ymax, v.y);
  }
  const double half = 0.5 * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
  const Point c{0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
  return {resolution, {c.x - half, c.y - half, c.x + half, c.y + half}, d.metric};
}

GridAssignment simulate(const std::vector<Site>& sites, const GridConfig& cfg) {
  if (cfg.resolution < 16) throw Error(ErrorCode::InvalidInput, "grid resolution must be at least 16");
  const double w = cfg.bbox.xmax - cfg.bbox.xmin, h = cfg.bbox.ymax - cfg.bbox.ymin;
  if (!(w > 0.0) || std::abs(w - h) > 1e-12 * w) throw Error(ErrorCode::InvalidInput, "grid box must be square");

  GridAssignment g;
  g.resolution = cfg.resolution;
  g.bbox = cfg.bbox;
  g.owner.assign(static_cast<std::size_t>(cfg.resolution) * cfg.resolution, kUnmatched);
  const double pixel_area = g.pixel_size() * g.pixel_size();

  std::vector<PixelStream> streams;
  std::vector<long> budget;
  for (const Site& s : sites) {
    streams.emplace_back(cfg, s.position);
    budget.push_back(std::lround(s.appetite / pixel_area));
  }
  using Entry = std::tuple<double, int, int, std::size_t>;  // distance, site id, pixel, site index
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto advance = [&](std::size_t i) {
    double d;
    int pixel;
    if (budget[i] > 0 && streams[i].next(d, pixel)) heap.emplace(d, sites[i].id, pixel, i);
  };
  for (std::size_t i = 0; i < sites.size(); ++i) advance(i);
  while (!heap.empty()) {
    const auto [d, id, pixel, i] = heap.top();
    heap.pop();
    if (g.owner[pixel] == kUnmatched && budget[i] > 0) {
      g.owner[pixel] = id;
      --budget[i];
    }
    advance(i);
  }
  return g;
}

Agreement agreement(const StableDiagram& d, const GridAssignment& g, const AgreementOptions& opt) {
  const int n = g.resolution;
  const double px = g.pixel_size();
  const double band = opt.band_pixels * px;
  std::vector<char> skip(static_cast<std::size_t>(n) * n, 0);
  for (const SiteRegion& r : d.regions)
    for (const ArcSegBoundary& loop : r.loops)
      for (const Edge& e : loop.elements) {
        const Box b = bounds(e);
        const int c0 = std::max(0, static_cast<int>(std::floor((b.xmin - band - g.bbox.xmin) / px)));
        const int c1 = std::min(n - 1, static_cast<int>(std::floor((b.xmax + band - g.bbox.xmin) / px)));
        const int r0 = std::max(0, static_cast<int>(std::floor((b.ymin - band - g.bbox.ymin) / px)));
        const int r1 = std::min(n - 1, static_cast<int>(std::floor((b.ymax + band - g.bbox.ymin) / px)));
        for (int row = r0; row <= r1; ++row)
          for (int col = c0; col <= c1; ++col)
            if (distance_to(e, g.center(row, col)) <= band) skip[static_cast<std::size_t>(row) * n + col] = 1;
      }

  std::vector<long> compared(n, 0), agreeing(n, 0);
  parallel_for(static_cast<std::size_t>(n), opt.parallel, [&](std::size_t row) {
    for (int col = 0; col < n; ++col) {
      const std::size_t k = row * n + col;
      if (skip[k]) continue;
      const int grid = g.owner[k];
      const int exact = classify_point(d, g.center(static_cast<int>(row), col)).site;
      if (grid == kUnmatched && exact == kUnmatched) continue;
      ++compared[row];
      if (grid == exact) ++agreeing[row];
    }
  });
  Agreement a;
  for (int row = 0; row < n; ++row) {
    a.compared += compared[row];
    a.agreeing += agreeing[row];
  }
  a.fraction = a.compared > 0 ? static_cast<double>(a.agreeing) / a.compared : 1.0;
  return a;
}

void write_pgm(const GridAssignment& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  out << "P5\n" << g.resolution << ' ' << g.resolution << "\n255\n";
  // Top row of the image is the largest y.
  for (int row = g.resolution - 1; row >= 0; --row)
    for (int col = 0; col < g.resolution; ++col) {
      const int o = g.at(row, col);
      const unsigned char v = o == kUnmatched ? 255 : static_cast<unsigned char>(32 + (o * 67) % 192);
      out.put(static_cast<char>(v));
    }
}

}  // namespace smvd
