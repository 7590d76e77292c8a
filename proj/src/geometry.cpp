#include "qpcolor/geometry.hpp"

#include <cmath>
#include <numbers>

#include "qpcolor/rng.hpp"

namespace qpc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

UnitVector::UnitVector(std::vector<double> interleaved) : c_(std::move(interleaved)) {
  if (c_.empty() || c_.size() % 2 != 0) {
    throw std::invalid_argument("UnitVector: need 2k interleaved coordinates, k >= 1");
  }
  double n2 = 0.0;
  for (double v : c_) n2 += v * v;
  if (std::abs(n2 - 1.0) > 2.0 * kAlgebraicTol) {  // |n2-1| ~ 2|n-1| near 1
    throw std::invalid_argument("UnitVector: coordinates are not unit norm");
  }
}

UnitVector UnitVector::normalized(std::vector<double> interleaved) {
  double n2 = 0.0;
  for (double v : interleaved) n2 += v * v;
  if (n2 <= 0.0) throw std::invalid_argument("UnitVector: cannot normalize zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (double& v : interleaved) v *= inv;
  return UnitVector(std::move(interleaved));
}

std::complex<double> inner(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); j += 2) {
    const double xr = x[j], xi = x[j + 1], yr = y[j], yi = y[j + 1];
    re += xr * yr + xi * yi;
    im += xi * yr - xr * yi;
  }
  return {re, im};
}

double distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance: dimension mismatch");
  double d2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = x[j] - y[j];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

std::complex<double> zeta_power(std::int64_t e, int q) {
  if (q <= 0) throw std::invalid_argument("zeta_power: q must be positive");
  std::int64_t r = e % q;
  if (r < 0) r += q;
  // Exact values at quarter turns keep rotations by them lossless.
  if (r == 0) return {1.0, 0.0};
  if (2 * r == q) return {-1.0, 0.0};
  if (4 * r == q) return {0.0, 1.0};
  if (4 * r == 3 * q) return {0.0, -1.0};
  const double a = kTwoPi * static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(a), std::sin(a)};
}

void rotate_in_place(std::span<double> coords, std::int64_t s, int q) {
  const std::complex<double> w = zeta_power(s, q);
  const double wr = w.real(), wi = w.imag();
  for (std::size_t j = 0; j + 1 < coords.size(); j += 2) {
    const double re = coords[j], im = coords[j + 1];
    coords[j] = re * wr - im * wi;
    coords[j + 1] = re * wi + im * wr;
  }
}

UnitVector rotate(const UnitVector& x, std::int64_t s, int q) {
  std::vector<double> c(x.data().begin(), x.data().end());
  rotate_in_place(c, s, q);
  return UnitVector(std::move(c));
}

double canonical_arg(std::complex<double> z) {
  if (z.real() == 0.0 && z.imag() == 0.0) {
    throw std::domain_error("canonical_arg: zero has no phase");
  }
  double a = std::atan2(z.imag(), z.real());
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

int sector_of(std::complex<double> z, int q) {
  if (q <= 0) throw std::invalid_argument("sector_of: q must be positive");
  const double a = canonical_arg(z);
  int s = static_cast<int>(a * static_cast<double>(q) / kTwoPi);
  if (s >= q) s = q - 1;  // guard against rounding at the wrap point
  return s;
}

PhaseArc::PhaseArc(int f_, int p_, int q_) : f(f_), p(p_), q(q_) {
  if (q < 2 || p < 1 || p >= q || f < 0 || f >= q) {
    throw std::invalid_argument("PhaseArc: need 0 <= f < q and 1 <= p < q");
  }
}

bool PhaseArc::contains(std::complex<double> z) const {
  const int s = sector_of(z, q);
  int d = s - f;
  if (d < 0) d += q;
  return d < p;
}

IdentityCheck check_inner_product_identities(const UnitVector& x, const UnitVector& y,
                                             double theta) {
  const std::complex<double> e_pos = std::polar(1.0, theta);
  const std::complex<double> e_neg = std::polar(1.0, -theta);
  const std::complex<double> xy = inner(x, y);
  const std::complex<double> yx = inner(y, x);

  // Im<x, -e^{i theta} y> computed from scaled coordinates, no shortcut.
  std::vector<double> scaled(y.data().begin(), y.data().end());
  const std::complex<double> c = -e_pos;
  for (std::size_t j = 0; j + 1 < scaled.size(); j += 2) {
    const double re = scaled[j], im = scaled[j + 1];
    scaled[j] = re * c.real() - im * c.imag();
    scaled[j + 1] = re * c.imag() + im * c.real();
  }
  const std::complex<double> lhs1 = inner(x.data(), scaled);

  IdentityCheck out;
  out.residual_conjugation = std::abs(lhs1.imag() - (-e_neg * xy).imag());
  out.residual_swap = std::abs((e_pos * xy).imag() + (e_neg * yx).imag());
  out.pass = out.residual_conjugation < kAlgebraicTol && out.residual_swap < kAlgebraicTol;
  return out;
}

void sample_uniform_into(std::span<double> coords, std::uint64_t stream_seed) {
  SplitRng rng(stream_seed);
  double n2 = 0.0;
  for (std::size_t j = 0; j + 1 < coords.size(); j += 2) {
    double g0, g1;
    rng.gaussian_pair(g0, g1);
    coords[j] = g0;
    coords[j + 1] = g1;
    n2 += g0 * g0 + g1 * g1;
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (double& v : coords) v *= inv;
}

std::vector<UnitVector> sample_uniform(int k, std::size_t count, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("sample_uniform: k must be >= 1");
  std::vector<UnitVector> out;
  out.reserve(count);
  std::vector<double> buf(2 * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < count; ++i) {
    sample_uniform_into(buf, derive_seed(seed, i));
    out.push_back(UnitVector(buf));
  }
  return out;
}

}  // namespace qpc
