#pragma once

// Instance generators.

#include <cstdint>
#include <vector>

#include "smvd/voronoi.hpp"

namespace smvd {

/// n sites uniform in [0, spread]^2 with pairwise distance at least
/// spread / (10 n). Throws GenerationFailure after too many rejections.
std::vector<Site> random_instance(int n, double appetite, std::uint64_t seed, double spread = 10.0);

/// Same, with each appetite drawn uniformly from [appetite_lo, appetite_hi].
std::vector<Site> random_instance(int n, double appetite_lo, double appetite_hi, std::uint64_t seed,
                                  double spread = 10.0);

/// Quadratic-complexity family with n = 2m sites. X: m sites on x = 0
/// spanning y in [-1, 1], appetite 10 m^2 (ids 0..m-1). Y: m sites of
/// appetite pi at y = 0, x = +-2.1 (k + 1) (ids m..2m-1).
std::vector<Site> lower_bound_family(int m);

/// Sites at (-b, 0) and (b, 0). Throws BOutOfRange unless 0 < b < sqrt(A / pi).
std::vector<Site> two_site_fixture(double b, double appetite = 1.0);

}  // namespace smvd
