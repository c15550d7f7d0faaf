#pragma once

#include <iosfwd>
#include <string>

#include "smvd/solver.hpp"

namespace smvd {

struct RenderOptions {
  std::string palette = "hue";  // "hue" or "grey"
  bool show_disks = false;      // bounding circles, dashed
  bool show_voronoi = false;    // standard Voronoi diagram of all sites, thick lines
  double width = 800.0;         // pixels
};

/// One path per face; arcs use native SVG arc commands. Output depends only
/// on the diagram and the options.
void render_svg(std::ostream& out, const StableDiagram& d, const RenderOptions& opt = {});

/// Fill colour of a site, "#rrggbb".
std::string site_color(int id, const std::string& palette);

}  // namespace smvd
