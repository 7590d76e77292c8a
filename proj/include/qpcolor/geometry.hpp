#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qpc {

inline constexpr double kAlgebraicTol = 1e-9;   // tolerance for algebraic identities
inline constexpr double kZeroInnerTol = 1e-12;  // below this an inner product counts as zero

// Point on the unit sphere of C^k, stored as 2k doubles (re/im interleaved).
class UnitVector {
 public:
  // Validates the layout and the unit norm (within kAlgebraicTol); throws
  // std::invalid_argument otherwise.
  explicit UnitVector(std::vector<double> interleaved);

  // Scales an arbitrary nonzero vector onto the sphere.
  static UnitVector normalized(std::vector<double> interleaved);

  int dim() const { return static_cast<int>(c_.size() / 2); }
  std::complex<double> coord(int j) const { return {c_[2 * j], c_[2 * j + 1]}; }
  std::span<const double> data() const { return c_; }
  std::vector<double>& raw() { return c_; }

  friend bool operator==(const UnitVector& a, const UnitVector& b) { return a.c_ == b.c_; }

 private:
  std::vector<double> c_;
};

// Hermitian inner product sum_j x_j * conj(y_j) on interleaved coordinate
// spans.  Throws std::invalid_argument on dimension mismatch.
std::complex<double> inner(std::span<const double> x, std::span<const double> y);
inline std::complex<double> inner(const UnitVector& x, const UnitVector& y) {
  return inner(x.data(), y.data());
}

// Euclidean distance between interleaved coordinate vectors.
double distance(std::span<const double> x, std::span<const double> y);

// zeta^e where zeta = exp(2*pi*i/q).  Results at quarter turns (1, i, -1, -i)
// are returned exactly so multiplying by them is lossless.
std::complex<double> zeta_power(std::int64_t e, int q);

// Multiply every coordinate of x by zeta^s (a sphere isometry).
UnitVector rotate(const UnitVector& x, std::int64_t s, int q);
void rotate_in_place(std::span<double> coords, std::int64_t s, int q);

// Phase argument canonicalized to [0, 2*pi).  Throws std::domain_error on 0.
double canonical_arg(std::complex<double> z);

// Index f in {0,..,q-1} with arg(z) in [2*pi*f/q, 2*pi*(f+1)/q).
int sector_of(std::complex<double> z, int q);

// Half-open phase arc [2*pi*f/q, 2*pi*(f+p)/q) taken modulo 2*pi.
struct PhaseArc {
  int f = 0;
  int p = 1;
  int q = 2;

  PhaseArc(int f_, int p_, int q_);

  // Membership of arg(z); z == 0 is a domain error.  Implemented on sector
  // indices so that for any nonzero z exactly p of the q arcs contain it.
  bool contains(std::complex<double> z) const;
};

inline bool arc_contains(const PhaseArc& arc, std::complex<double> z) {
  return arc.contains(z);
}

// Residuals of the two conjugation identities
//   Im<x, -e^{i*theta} y> = Im(-e^{-i*theta} <x,y>)
//   Im(e^{i*theta} <x,y>) = -Im(e^{-i*theta} <y,x>)
// and whether both are below kAlgebraicTol.
struct IdentityCheck {
  double residual_conjugation = 0.0;
  double residual_swap = 0.0;
  bool pass = false;
};
IdentityCheck check_inner_product_identities(const UnitVector& x, const UnitVector& y,
                                             double theta);

// `count` i.i.d. uniform points on the unit sphere of C^k (normalized complex
// Gaussians).  Point i is drawn from the sub-stream derive_seed(seed, i), so
// the result is independent of generation order.
std::vector<UnitVector> sample_uniform(int k, std::size_t count, std::uint64_t seed);

// Single uniform point, written into 2k interleaved doubles.
void sample_uniform_into(std::span<double> coords, std::uint64_t stream_seed);

}  // namespace qpc
