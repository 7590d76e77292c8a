#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qpc {

// Symmetric 0/1 adjacency over n vertices, one row per vertex packed into
// 64-bit words (bit j of row i = entry (i, j)).  The diagonal stays empty.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_(words_per_row(n)), bits_(n * words_per_row(n), 0) {}

  static std::size_t words_per_row(std::size_t n) { return (n + 63) / 64; }

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }

  void set_pair(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  void clear_pair(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
    bits_[j * words_ + i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  void set_bit(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }

  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t i) {
    return {bits_.data() + i * words_, words_};
  }

  std::size_t row_popcount(std::size_t i) const {
    std::size_t c = 0;
    for (std::uint64_t w : row(i)) c += std::popcount(w);
    return c;
  }

  // Popcount of row i restricted to columns [lo, hi).
  std::size_t row_popcount_range(std::size_t i, std::size_t lo, std::size_t hi) const;

  // Total number of set bits / 2 (edges of the symmetric relation).
  std::size_t edge_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c / 2;
  }

  // Flip every off-diagonal entry.
  void complement();

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

  std::span<const std::uint64_t> raw_words() const { return bits_; }
  std::span<std::uint64_t> raw_words() { return bits_; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// AND of the rows of `g` indexed by S, written into `out` (resized to the
// row width).  Throws std::invalid_argument when S is empty.
void and_rows(const BitMatrix& g, std::span<const std::size_t> s,
              std::vector<std::uint64_t>& out);

std::size_t popcount_words(std::span<const std::uint64_t> w);

}  // namespace qpc
