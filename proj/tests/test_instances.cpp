#include <doctest.h>

#include <chrono>

#include "smvd/instances.hpp"
#include "smvd/solver.hpp"

using namespace smvd;

TEST_CASE("random_instance") {
  CHECK(random_instance(1, 1.0, 3).size() == 1);
  const auto a = random_instance(25, 1.0, 7);
  const auto b = random_instance(25, 1.0, 7);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].position == b[i].position);
    CHECK(a[i].id == static_cast<int>(i));
    for (std::size_t j = 0; j < i; ++j) CHECK(dist(a[i].position, a[j].position) >= 10.0 / 250.0);
  }
  const auto c = random_instance(10, 0.5, 3.0, 5);
  for (const Site& s : c) {
    CHECK(s.appetite >= 0.5);
    CHECK(s.appetite <= 3.0);
  }
  CHECK_THROWS_AS(random_instance(0, 1.0, 1), Error);
}

TEST_CASE("lower_bound_family") {
  const auto s = lower_bound_family(4);
  REQUIRE(s.size() == 8);
  for (int k = 0; k < 4; ++k) CHECK(s[k].appetite == 160.0);
  for (int k = 4; k < 8; ++k) CHECK(s[k].appetite == kPi);
  const auto six = lower_bound_family(6);
  CHECK(dist(six[6].position, six[8].position) == doctest::Approx(2.1).epsilon(1e-15));
  CHECK(six[0].position == Point{0, -1});
  CHECK(six[5].position == Point{0, 1});
  CHECK_THROWS_AS(lower_bound_family(5), Error);
}

TEST_CASE("lower bound family has quadratically many faces") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = solve(lower_bound_family(8), Metric::euclidean());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("m=8 faces " << d.counts.faces << " edges " << d.counts.edges << " vertices " << d.counts.vertices
                       << " in " << secs << " s");
  CHECK(d.counts.faces >= 48);
  for (const auto& r : d.regions) CHECK(std::abs(r.area - r.appetite) <= 1e-6 * r.appetite);
}

TEST_CASE("two_site_fixture") {
  const auto s = two_site_fixture(0.3, 1.0);
  CHECK(s[0].position == Point{-0.3, 0});
  CHECK(s[1].position == Point{0.3, 0});
  CHECK_NOTHROW(two_site_fixture(0.5, 1.0));
  CHECK_NOTHROW(two_site_fixture(0.55, 1.0));  // just under sqrt(1/pi)
  try {
    two_site_fixture(0.57, 1.0);
    FAIL("expected BOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BOutOfRange);
  }
}
