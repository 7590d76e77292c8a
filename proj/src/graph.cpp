#include "qpcolor/graph.hpp"

#include <bit>
#include <stdexcept>

#include "qpcolor/rng.hpp"

namespace qpc {

SimpleGraph build_hypercube(int m) {
  if (m < 1) throw std::invalid_argument("build_hypercube: m must be >= 1");
  if (m > 24) throw std::length_error("build_hypercube: m > 24 exceeds the size budget");
  const std::size_t n = std::size_t{1} << m;
  SimpleGraph g(n, "hypercube_m" + std::to_string(m));
  const int max_dist = m / 2;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const int d = std::popcount(u ^ v);
      if (d >= 1 && d <= max_dist) g.adj.set_pair(u, v);
    }
  }
  return g;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: the running product is always divisible
  }
  return r;
}

Fraction hypercube_density(int m) {
  if (m < 1 || m > 24) throw std::invalid_argument("hypercube_density: need 1 <= m <= 24");
  std::uint64_t deg = 0;
  for (int i = 1; i <= m / 2; ++i) deg += binomial(m, i);
  return Fraction{deg, (std::uint64_t{1} << m) - 1};
}

SimpleGraph build_random_graph(std::size_t n, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("build_random_graph: density must lie in [0, 1]");
  }
  SimpleGraph g(n, "gnp_n" + std::to_string(n));
  SplitRng rng(derive_seed(seed, 0x67705ULL));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform01() < density) g.adj.set_pair(u, v);
    }
  }
  return g;
}

SimpleGraph complement(const SimpleGraph& g) {
  SimpleGraph out = g;
  out.adj.complement();
  out.label = g.label + "_complement";
  return out;
}

}  // namespace qpc
