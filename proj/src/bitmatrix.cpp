#include "qpcolor/bitmatrix.hpp"

namespace qpc {

std::size_t BitMatrix::row_popcount_range(std::size_t i, std::size_t lo,
                                          std::size_t hi) const {
  if (lo >= hi) return 0;
  auto r = row(i);
  const std::size_t w_lo = lo / 64, w_hi = (hi - 1) / 64;
  std::size_t c = 0;
  for (std::size_t w = w_lo; w <= w_hi; ++w) {
    std::uint64_t word = r[w];
    if (w == w_lo) word &= ~std::uint64_t{0} << (lo % 64);
    if (w == w_hi && hi % 64 != 0) word &= ~std::uint64_t{0} >> (64 - hi % 64);
    c += std::popcount(word);
  }
  return c;
}

void BitMatrix::complement() {
  for (std::size_t i = 0; i < n_; ++i) {
    auto r = row(i);
    for (auto& w : r) w = ~w;
    // keep the diagonal empty and the padding bits zero
    r[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    if (n_ % 64 != 0) r[words_ - 1] &= ~std::uint64_t{0} >> (64 - n_ % 64);
  }
}

void and_rows(const BitMatrix& g, std::span<const std::size_t> s,
              std::vector<std::uint64_t>& out) {
  if (s.empty()) throw std::invalid_argument("and_rows: empty vertex set");
  auto first = g.row(s[0]);
  out.assign(first.begin(), first.end());
  for (std::size_t idx = 1; idx < s.size(); ++idx) {
    auto r = g.row(s[idx]);
    for (std::size_t w = 0; w < out.size(); ++w) out[w] &= r[w];
  }
}

std::size_t popcount_words(std::span<const std::uint64_t> w) {
  std::size_t c = 0;
  for (std::uint64_t x : w) c += std::popcount(x);
  return c;
}

}  // namespace qpc
