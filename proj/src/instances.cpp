#include "smvd/instances.hpp"

#include <cmath>
#include <random>

namespace smvd {

std::vector<Site> random_instance(int n, double appetite, std::uint64_t seed, double spread) {
  return random_instance(n, appetite, appetite, seed, spread);
}

std::vector<Site> random_instance(int n, double appetite_lo, double appetite_hi, std::uint64_t seed,
                                  double spread) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "need at least one site");
  if (!(appetite_lo > 0.0) || appetite_hi < appetite_lo)
    throw Error(ErrorCode::InvalidInput, "appetite range must be positive and ordered");
  if (!(spread > 0.0)) throw Error(ErrorCode::InvalidInput, "spread must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, spread);
  std::uniform_real_distribution<double> app(appetite_lo, appetite_hi);
  const double min_gap = spread / (10.0 * n);
  std::vector<Site> sites;
  int rejected = 0;
  while (static_cast<int>(sites.size()) < n) {
    const Point p{pos(rng), pos(rng)};
    bool ok = true;
    for (const Site& s : sites)
      if (dist(s.position, p) < min_gap) ok = false;
    if (!ok) {
      if (++rejected > 1000 * n) throw Error(ErrorCode::GenerationFailure, "too many rejected positions");
      continue;
    }
    const double a = appetite_lo == appetite_hi ? appetite_lo : app(rng);
    sites.push_back({static_cast<int>(sites.size()), p, a});
  }
  return sites;
}

std::vector<Site> lower_bound_family(int m) {
  if (m < 4 || m % 2 != 0) throw Error(ErrorCode::InvalidInput, "m must be even and at least 4");
  std::vector<Site> sites;
  const double large = 10.0 * m * m;
  for (int k = 0; k < m; ++k) sites.push_back({k, {0.0, -1.0 + 2.0 * k / (m - 1)}, large});
  for (int k = 0; k < m / 2; ++k) {
    const double x = 2.1 * (k + 1);
    sites.push_back({m + 2 * k, {-x, 0.0}, kPi});
    sites.push_back({m + 2 * k + 1, {x, 0.0}, kPi});
  }
  return sites;
}

std::vector<Site> two_site_fixture(double b, double appetite) {
  if (!(appetite > 0.0)) throw Error(ErrorCode::InvalidInput, "appetite must be positive");
  if (!(b > 0.0 && b < std::sqrt(appetite / kPi)))
    throw Error(ErrorCode::BOutOfRange, "half-distance must lie in (0, sqrt(A / pi))");
  return {{0, {-b, 0.0}, appetite}, {1, {b, 0.0}, appetite}};
}

}  // namespace smvd
