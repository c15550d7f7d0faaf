#pragma once

// Pixel-grid version of the circle-growing process, used to cross-check the
// solver. All sites grow at once; each pixel goes to the first site that
// reaches it while that site still has budget.

#include <string>
#include <vector>

#include "smvd/solver.hpp"

namespace smvd {

struct GridConfig {
  int resolution = 512;  // pixels per side, at least 16
  Box bbox;              // must be square
  Metric metric;
};

/// Square box around the solver's working box.
GridConfig grid_config_for(const StableDiagram& d, int resolution);

struct GridAssignment {
  int resolution = 0;
  Box bbox;
  std::vector<int> owner;  // row-major, row 0 at ymin; kUnmatched when free

  double pixel_size() const { return (bbox.xmax - bbox.xmin) / resolution; }
  Point center(int row, int col) const;
  int at(int row, int col) const { return owner[static_cast<std::size_t>(row) * resolution + col]; }
};

/// Deferred acceptance over (distance, site id, pixel index) in increasing
/// order. Each site accepts round(appetite / pixel area) pixels.
GridAssignment simulate(const std::vector<Site>& sites, const GridConfig& cfg);

struct AgreementOptions {
  double band_pixels = 2.0;  // pixels this close to a diagram edge are skipped
  bool parallel = true;
};

struct Agreement {
  double fraction = 1.0;
  long compared = 0;  // pixels matched in the grid or in the diagram, off the band
  long agreeing = 0;
};

/// Fraction of compared pixels whose grid owner equals classify_point at the
/// pixel center.
Agreement agreement(const StableDiagram& d, const GridAssignment& g, const AgreementOptions& opt = {});

/// Greyscale raster, unmatched pixels white.
void write_pgm(const GridAssignment& g, const std::string& path);

}  // namespace smvd
