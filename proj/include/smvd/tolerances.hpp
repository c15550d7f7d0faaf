#pragma once

namespace smvd {

// All numeric slack used across the library lives here.
struct Tolerances {
  double eps_join = 1e-9;        // world units; endpoint snapping / boundary band
  double eps_unit = 1e-12;       // unit-vector normalization slack
  double eps_area_rel = 1e-9;    // primitive area tolerance, relative to appetite
  double eps_radius_rel = 1e-10; // primitive radius bracket, relative to instance scale
};

}  // namespace smvd
