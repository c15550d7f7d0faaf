#pragma once

// Independent checks on a computed diagram.

#include <cstdint>
#include <string>
#include <vector>

#include "smvd/solver.hpp"

namespace smvd {

struct VerifyOptions {
  long samples = 100000;       // stability sampling
  int grid_resolution = 0;     // 0 skips the grid comparison
  std::uint64_t seed = 1;
  double area_tol_rel = 1e-6;
  double taxonomy_tol = 1e-9;
  double stability_min = 0.9999;
  double grid_min = 0.99;
  bool parallel = true;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  // worst residual or agreement fraction
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Per site: the faces have the appetite as area, and the farthest face
/// point from the site is at distance r*. Worst relative error is reported.
CheckResult area_audit(const StableDiagram& d, double tol_rel);

/// Straight edges lie on the bisector of the sites on either side (or, for a
/// polygonal metric, on a ball boundary); curved edges lie on the bounding
/// circle of the site on their convex side.
CheckResult edge_taxonomy(const StableDiagram& d, double tol);

/// Largest deviation from the curve an edge is supposed to lie on.
double taxonomy_residual(const StableDiagram& d, int owner, const Edge& e);

/// Fraction of uniform samples in the working box, away from ties and ball
/// boundaries, where classify_point agrees with face membership.
CheckResult stability_sampling(const StableDiagram& d, long samples, std::uint64_t seed, double min_fraction,
                               bool parallel = true);

/// Site whose faces contain p, or kUnmatched.
int region_at(const StableDiagram& d, Point p);

VerifyReport verify(const std::vector<Site>& sites, const StableDiagram& d, const VerifyOptions& opt = {});

}  // namespace smvd
