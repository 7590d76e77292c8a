#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "qpcolor/geometry.hpp"
#include "qpcolor/partition.hpp"
#include "qpcolor/rng.hpp"

using namespace qpc;

namespace {
constexpr double kPi = std::numbers::pi;

// Uniform point on S^{d-1} via normalized Gaussians; d must be even here
// (complex sampling covers exactly the even real dimensions we use).
std::vector<double> random_real_unit(int d, std::uint64_t stream) {
  std::vector<double> x(d);
  sample_uniform_into(x, stream);
  return x;
}
}  // namespace

TEST_CASE("cap measure closed forms") {
  CHECK(cap_measure_from_colatitude(2, kPi / 2) == doctest::Approx(0.5));
  CHECK(cap_measure_from_colatitude(2, kPi / 4) == doctest::Approx(0.25));
  // dim 3: (1 - cos(theta)) / 2.
  CHECK(cap_measure_from_colatitude(3, kPi / 2) == doctest::Approx(0.5));
  CHECK(cap_measure_from_colatitude(3, kPi / 3) == doctest::Approx(0.25));
  CHECK(cap_measure_from_colatitude(4, kPi / 2) == doctest::Approx(0.5));
  CHECK(cap_measure_from_colatitude(4, 0.0) == doctest::Approx(0.0));
  CHECK(cap_measure_from_colatitude(4, kPi) == doctest::Approx(1.0));
  for (const int d : {2, 3, 4, 7, 16}) {
    for (const double theta : {0.3, 1.0, 2.0, 2.9}) {
      const double v = cap_measure_from_colatitude(d, theta);
      CHECK(colatitude_from_cap_measure(d, v) == doctest::Approx(theta).epsilon(1e-8));
    }
  }
}

TEST_CASE("trivial partitions") {
  CHECK_THROWS_AS(EqualAreaPartition(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(EqualAreaPartition(4, 0), std::invalid_argument);

  const EqualAreaPartition whole(6, 1);
  CHECK(whole.size() == 1);
  CHECK(whole.measure(0) == doctest::Approx(1.0));
  const auto x = random_real_unit(6, derive_seed(1, 0));
  CHECK(whole.locate(x) == 0);
  CHECK(whole.contains(0, x));

  const EqualAreaPartition halves(4, 2);
  CHECK(halves.measure(0) == doctest::Approx(0.5));
  CHECK(halves.measure(1) == doctest::Approx(0.5));
}

TEST_CASE("circle partition into equal arcs") {
  const EqualAreaPartition arcs(2, 4);
  for (std::size_t id = 0; id < 4; ++id) {
    CHECK(arcs.measure(id) == doctest::Approx(0.25));
    const auto c = arcs.center(id);
    CHECK(c.size() == 2);
    CHECK(std::hypot(c[0], c[1]) == doctest::Approx(1.0));
    CHECK(arcs.contains(id, c));
  }
  // Four points a quarter turn apart land in four distinct arcs.
  std::vector<std::size_t> seen;
  for (int i = 0; i < 4; ++i) {
    const double a = 0.1 + i * kPi / 2;
    seen.push_back(arcs.locate(std::vector<double>{std::cos(a), std::sin(a)}));
  }
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("regions are disjoint, cover the sphere, and carry their centers") {
  for (const auto& [dim, n] : std::vector<std::pair<int, std::size_t>>{{4, 7}, {6, 20}, {8, 33}}) {
    const EqualAreaPartition part(dim, n);
    REQUIRE(part.size() == n);
    double total = 0.0;
    for (std::size_t id = 0; id < n; ++id) {
      total += part.measure(id);
      CHECK(part.measure(id) == doctest::Approx(1.0 / static_cast<double>(n)));
      CHECK(part.diameter_bound(id) > 0.0);
      CHECK(part.diameter_bound(id) <= 2.0 + 1e-12);
      const auto c = part.center(id);
      double norm2 = 0.0;
      for (double v : c) norm2 += v * v;
      CHECK(norm2 == doctest::Approx(1.0));
      CHECK(part.contains(id, c));
      CHECK(part.locate(c) == id);
    }
    CHECK(total == doctest::Approx(1.0));
    for (int trial = 0; trial < 300; ++trial) {
      const auto x = random_real_unit(dim, derive_seed(900 + dim, trial));
      const std::size_t at = part.locate(x);
      REQUIRE(at < n);
      int members = 0;
      for (std::size_t id = 0; id < n; ++id) members += part.contains(id, x) ? 1 : 0;
      REQUIRE(members == 1);
      CHECK(part.contains(at, x));
    }
  }
}

TEST_CASE("pairwise distances within a region respect the diameter bound") {
  const int dim = 6;
  const EqualAreaPartition part(dim, 20);
  std::vector<std::vector<std::vector<double>>> buckets(part.size());
  for (int trial = 0; trial < 2000; ++trial) {
    auto x = random_real_unit(dim, derive_seed(31, trial));
    buckets[part.locate(x)].push_back(std::move(x));
  }
  for (std::size_t id = 0; id < part.size(); ++id) {
    const double bound = part.diameter_bound(id);
    for (std::size_t i = 0; i < buckets[id].size(); ++i) {
      for (std::size_t j = i + 1; j < buckets[id].size(); ++j) {
        CHECK(distance(buckets[id][i], buckets[id][j]) <= bound + 1e-9);
      }
    }
  }
}

TEST_CASE("region measures match Monte Carlo frequency") {
  const int dim = 4;
  const std::size_t n = 100;
  const EqualAreaPartition part(dim, n);
  const std::size_t samples = 100000;
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    ++hits[part.locate(random_real_unit(dim, derive_seed(77, i)))];
  }
  // Per-region frequency ~ Binomial(samples, 1/n): 4 sigma ~ 1.26e-3.
  const double sigma = std::sqrt(0.01 * 0.99 / static_cast<double>(samples));
  std::size_t total = 0;
  for (std::size_t id = 0; id < n; ++id) {
    total += hits[id];
    const double freq = static_cast<double>(hits[id]) / static_cast<double>(samples);
    CHECK(std::abs(freq - 0.01) < 4 * sigma);
  }
  CHECK(total == samples);
}

TEST_CASE("partition regions list is complete") {
  const EqualAreaPartition part(6, 13);
  const auto regs = part.regions();
  REQUIRE(regs.size() == 13);
  for (std::size_t id = 0; id < regs.size(); ++id) {
    CHECK(regs[id].id == id);
    CHECK(regs[id].measure == doctest::Approx(part.measure(id)));
    CHECK(regs[id].center == part.center(id));
    CHECK(regs[id].diameter_bound == doctest::Approx(part.diameter_bound(id)));
  }
}
