#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpcolor/bitmatrix.hpp"
#include "qpcolor/geometry.hpp"
#include "qpcolor/graph.hpp"

namespace qpc {

// Raised when a construction cannot satisfy its own invariants (for example
// an inner product indistinguishable from zero after the resample budget).
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PointMode { sampled, partitioned };

std::string to_string(PointMode mode);
PointMode point_mode_from_string(const std::string& s);

struct FamilyParams {
  int p = 1;
  int q = 2;
  int k = 1;
  int t = 1;
  double eta = 0.1;
  std::uint64_t seed = 0;
  PointMode mode = PointMode::sampled;

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct VertexOrigin {
  int sphere = 0;        // 0-based sphere index
  std::size_t index = 0; // 0-based position within the sphere

  friend bool operator==(const VertexOrigin&, const VertexOrigin&) = default;
};

// t point lists on the unit sphere of C^k.  Sampled mode draws i.i.d. uniform
// points; partitioned mode takes the centers of an equal-area partition of
// the 2k-dimensional real sphere.  Any candidate whose inner product with an
// already accepted point has modulus below kZeroInnerTol is redrawn (up to
// 100 attempts); in partitioned mode such a collision is fatal since centers
// cannot move.
class SphereFamily {
 public:
  static SphereFamily generate(const FamilyParams& params, std::vector<std::size_t> sizes);

  // Sphere sizes for t spheres over N vertices, differing by at most one,
  // larger spheres first.
  static std::vector<std::size_t> sizes_from_total(std::size_t total, int t);

  // Rebuild a family from stored state (deserialization).  Validates the
  // shape and per-point norms but does not rerun the inner-product guard,
  // which already held when the family was built.
  static SphereFamily from_raw(const FamilyParams& params, std::vector<std::size_t> sizes,
                               std::vector<double> coords);

  const FamilyParams& params() const { return params_; }
  double mu() const;  // eta / sqrt(2k)

  int spheres() const { return static_cast<int>(offsets_.size()) - 1; }
  std::size_t total() const { return offsets_.back(); }
  std::size_t sphere_size(int j) const { return offsets_[j + 1] - offsets_[j]; }
  std::size_t sphere_begin(int j) const { return offsets_[j]; }
  std::size_t sphere_end(int j) const { return offsets_[j + 1]; }
  std::vector<std::size_t> sizes() const;

  std::size_t vertex_id(int j, std::size_t m) const { return offsets_[j] + m; }
  VertexOrigin origin(std::size_t v) const;

  std::span<const double> point(std::size_t v) const {
    const std::size_t w = 2 * static_cast<std::size_t>(params_.k);
    return {coords_.data() + v * w, w};
  }
  std::span<const double> point(int j, std::size_t m) const { return point(vertex_id(j, m)); }
  UnitVector point_vector(std::size_t v) const;

  // Replace one point (used to plant exact rotation configurations).
  void set_point(std::size_t v, const UnitVector& x);

  // Copy with spheres below `sphere` multiplied by zeta^{-f} and spheres
  // above it by zeta^{f}: relabels color f's cross edges at `sphere` as
  // color 0's (see color_from_family).
  SphereFamily rotated_for_iso(int f, int sphere) const;

  std::span<const double> raw_coords() const { return coords_; }

  friend bool operator==(const SphereFamily& a, const SphereFamily& b) {
    return a.params_ == b.params_ && a.offsets_ == b.offsets_ && a.coords_ == b.coords_;
  }

 private:
  FamilyParams params_;
  std::vector<std::size_t> offsets_;  // t+1 vertex offsets, sphere-major layout
  std::vector<double> coords_;        // 2k doubles per point
};

// Construction metadata carried alongside a coloring for reports and files.
struct ConstructionInfo {
  int construction = 0;  // 1 or 2; 0 when the coloring was not built from spheres
  int k = 0;
  int t = 0;
  double eta = 0.0;
  std::uint64_t seed = 0;
  std::string mode;
  std::vector<std::size_t> sphere_sizes;

  friend bool operator==(const ConstructionInfo&, const ConstructionInfo&) = default;
};

// q symmetric color classes over N vertices; every unordered pair belongs to
// exactly p of them.
struct SetColoring {
  std::size_t n = 0;
  int p = 1;
  int q = 2;
  std::vector<BitMatrix> color;
  std::vector<VertexOrigin> origins;  // empty when vertices have no sphere origin
  ConstructionInfo info;

  SetColoring() = default;
  SetColoring(std::size_t n_, int p_, int q_);

  std::vector<int> pair_colors(std::size_t u, std::size_t v) const;

  // Number of unordered pairs covered by a number of classes != p (0 for a
  // valid coloring).  Bit-sliced popcount-free scan over row words.
  std::size_t exactly_p_violations() const;

  SimpleGraph color_class(int f) const;

  // Flip every class (maps an exactly-(q-p) coloring to an exactly-p one).
  void complement_all();

  std::size_t cross_pairs() const;   // pairs with different origin spheres
  std::size_t cross_edges(int f) const;

  friend bool operator==(const SetColoring& a, const SetColoring& b) = default;
};

// Colors of an intra-sphere pair with 1-based indices r < s inside one
// sphere: {(r+s) mod q, ..., (r+s+p-1) mod q}.
std::vector<int> intra_pair_colors(std::size_t r, std::size_t s, int p, int q);

// Same rule addressed by vertex ids; both must come from the same sphere.
std::vector<int> assign_intra_sphere(const SphereFamily& family, std::size_t u,
                                     std::size_t v, int p, int q);

// The arc rule applied to every cross pair plus the index rule on every
// intra-sphere pair.  Cross pair (a, b) with a's sphere below b's is an edge
// of class f iff the phase of <point_a, point_b> lies in the arc
// [2 pi f / q, 2 pi (f+p) / q).
SetColoring color_from_family(const SphereFamily& family, int p, int q, int threads = 1);

// The color classes a stored coloring would get from the given points:
// direct classes normally, complemented classes when the reference was
// itself built by complementation.
SetColoring rebuild_like(const SphereFamily& family, const SetColoring& reference,
                         int threads = 1);

struct Construction {
  SphereFamily family;
  SetColoring coloring;
};

// Direct construction for p/q <= 1/2.
Construction build_construction1(int p, int q, int k, int t, std::size_t n, double eta,
                                 std::uint64_t seed, PointMode mode = PointMode::sampled,
                                 int threads = 1);

// Densities above 1/2: run the direct construction for (q-p, q) and
// complement every class.
Construction build_construction2(int p, int q, int k, int t, std::size_t n, double eta,
                                 std::uint64_t seed, PointMode mode = PointMode::sampled,
                                 int threads = 1);

// Either construction, chosen by p/q.
Construction build_for_ratio(int p, int q, int k, int t, std::size_t n, double eta,
                             std::uint64_t seed, PointMode mode = PointMode::sampled,
                             int threads = 1);

}  // namespace qpc
