#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "qpcolor/bitmatrix.hpp"

namespace qpc {

// Simple undirected graph: symmetric bit-matrix plus a label.
struct SimpleGraph {
  std::size_t n = 0;
  BitMatrix adj;
  std::string label;

  SimpleGraph() = default;
  SimpleGraph(std::size_t n_, std::string label_) : n(n_), adj(n_), label(std::move(label_)) {}

  bool adjacent(std::size_t u, std::size_t v) const { return adj.test(u, v); }
  std::size_t degree(std::size_t u) const { return adj.row_popcount(u); }
  std::size_t edges() const { return adj.edge_count(); }
  double density() const {
    return n < 2 ? 0.0
                 : static_cast<double>(edges()) /
                       (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n == b.n && a.adj == b.adj && a.label == b.label;
  }
};

// Vertices {0,1}^m, edges between vectors at Hamming distance in [1, m/2].
// Throws std::length_error ("resource error") when m > 24, std::invalid_argument
// when m < 1.
SimpleGraph build_hypercube(int m);

// Exact edge density of the Hamming-ball graph above as a fraction
// degree / (2^m - 1); degree = sum_{i=1..floor(m/2)} C(m, i).
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};
Fraction hypercube_density(int m);

// Erdos-Renyi G(n, density) with one Bernoulli draw per pair, deterministic
// in (n, density, seed).
SimpleGraph build_random_graph(std::size_t n, double density, std::uint64_t seed);

SimpleGraph complement(const SimpleGraph& g);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace qpc
