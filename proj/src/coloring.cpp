#include "qpcolor/coloring.hpp"

#include <algorithm>
#include <cmath>

#include "qpcolor/parallel.hpp"
#include "qpcolor/partition.hpp"
#include "qpcolor/rng.hpp"

namespace qpc {

namespace {
// Stream tags keep the sub-seed spaces of unrelated draws disjoint.
constexpr std::uint64_t kPointStream = 0x706f696e74ULL;
constexpr int kMaxResamples = 100;
}  // namespace

std::string to_string(PointMode mode) {
  return mode == PointMode::sampled ? "sampled" : "partitioned";
}

PointMode point_mode_from_string(const std::string& s) {
  if (s == "sampled") return PointMode::sampled;
  if (s == "partitioned") return PointMode::partitioned;
  throw std::invalid_argument("unknown point mode: " + s);
}

std::vector<std::size_t> SphereFamily::sizes_from_total(std::size_t total, int t) {
  if (t < 1) throw std::invalid_argument("sizes_from_total: t must be >= 1");
  std::vector<std::size_t> sizes(t, total / t);
  for (std::size_t j = 0; j < total % t; ++j) ++sizes[j];
  return sizes;
}

SphereFamily SphereFamily::generate(const FamilyParams& params,
                                    std::vector<std::size_t> sizes) {
  if (params.k < 1) throw std::invalid_argument("SphereFamily: k must be >= 1");
  if (params.t < 1 || static_cast<int>(sizes.size()) != params.t) {
    throw std::invalid_argument("SphereFamily: need one size per sphere");
  }
  if (params.eta <= 0.0 || params.eta >= 1.0) {
    throw std::invalid_argument("SphereFamily: eta must lie in (0, 1)");
  }

  SphereFamily fam;
  fam.params_ = params;
  fam.offsets_.assign(1, 0);
  for (std::size_t s : sizes) fam.offsets_.push_back(fam.offsets_.back() + s);
  const std::size_t width = 2 * static_cast<std::size_t>(params.k);
  fam.coords_.assign(fam.total() * width, 0.0);

  std::vector<std::vector<double>> centers;
  if (params.mode == PointMode::partitioned) {
    // One partition per distinct sphere size; all spheres share the centers.
    const std::size_t n0 = sizes[0];
    for (std::size_t s : sizes) {
      if (s != n0) {
        throw ConstructionError("partitioned mode requires equal sphere sizes");
      }
    }
    EqualAreaPartition part(2 * params.k, n0);
    for (const PartitionRegion& r : part.regions()) centers.push_back(r.center);
  }

  for (std::size_t v = 0; v < fam.total(); ++v) {
    std::span<double> dst{fam.coords_.data() + v * width, width};
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxResamples && !accepted; ++attempt) {
      if (params.mode == PointMode::partitioned) {
        if (attempt > 0) break;  // centers are fixed; no resampling possible
        const VertexOrigin o = fam.origin(v);
        std::copy(centers[o.index].begin(), centers[o.index].end(), dst.begin());
      } else {
        sample_uniform_into(dst, derive_seed(params.seed, kPointStream, v, attempt));
      }
      accepted = true;
      for (std::size_t u = 0; u < v && accepted; ++u) {
        const auto ip = inner(fam.point(u), dst);
        if (std::abs(ip) < kZeroInnerTol) accepted = false;
      }
    }
    if (!accepted) {
      throw ConstructionError("zero inner product persisted through the resample budget");
    }
  }
  return fam;
}

SphereFamily SphereFamily::from_raw(const FamilyParams& params,
                                    std::vector<std::size_t> sizes,
                                    std::vector<double> coords) {
  if (params.k < 1) throw std::invalid_argument("from_raw: k must be >= 1");
  if (params.t < 1 || static_cast<int>(sizes.size()) != params.t) {
    throw std::invalid_argument("from_raw: need one size per sphere");
  }
  SphereFamily fam;
  fam.params_ = params;
  fam.offsets_.assign(1, 0);
  for (std::size_t s : sizes) fam.offsets_.push_back(fam.offsets_.back() + s);
  const std::size_t width = 2 * static_cast<std::size_t>(params.k);
  if (coords.size() != fam.total() * width) {
    throw std::invalid_argument("from_raw: coordinate count does not match sizes");
  }
  for (std::size_t v = 0; v < fam.total(); ++v) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      const double c = coords[v * width + i];
      n2 += c * c;
    }
    if (std::abs(n2 - 1.0) > 2.0 * kAlgebraicTol) {
      throw std::invalid_argument("from_raw: point is not unit norm");
    }
  }
  fam.coords_ = std::move(coords);
  return fam;
}

double SphereFamily::mu() const {
  return params_.eta / std::sqrt(2.0 * static_cast<double>(params_.k));
}

std::vector<std::size_t> SphereFamily::sizes() const {
  std::vector<std::size_t> s(spheres());
  for (int j = 0; j < spheres(); ++j) s[j] = sphere_size(j);
  return s;
}

VertexOrigin SphereFamily::origin(std::size_t v) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  const int j = static_cast<int>(it - offsets_.begin()) - 1;
  return VertexOrigin{j, v - offsets_[j]};
}

UnitVector SphereFamily::point_vector(std::size_t v) const {
  auto s = point(v);
  return UnitVector(std::vector<double>(s.begin(), s.end()));
}

void SphereFamily::set_point(std::size_t v, const UnitVector& x) {
  if (x.dim() != params_.k) throw std::invalid_argument("set_point: wrong dimension");
  auto src = x.data();
  std::copy(src.begin(), src.end(),
            coords_.begin() + static_cast<std::ptrdiff_t>(v * src.size()));
}

SphereFamily SphereFamily::rotated_for_iso(int f, int sphere) const {
  SphereFamily out = *this;
  const std::size_t width = 2 * static_cast<std::size_t>(params_.k);
  for (int j = 0; j < spheres(); ++j) {
    if (j == sphere) continue;
    const std::int64_t e = j < sphere ? -f : f;
    for (std::size_t v = sphere_begin(j); v < sphere_end(j); ++v) {
      rotate_in_place({out.coords_.data() + v * width, width}, e, params_.q);
    }
  }
  return out;
}

SetColoring::SetColoring(std::size_t n_, int p_, int q_) : n(n_), p(p_), q(q_) {
  if (p < 1 || p >= q) throw std::invalid_argument("SetColoring: need 1 <= p < q");
  color.assign(q, BitMatrix(n));
}

std::vector<int> SetColoring::pair_colors(std::size_t u, std::size_t v) const {
  std::vector<int> out;
  for (int f = 0; f < q; ++f) {
    if (color[f].test(u, v)) out.push_back(f);
  }
  return out;
}

namespace {
// Bits of word w (columns [64w, 64w+64)) that index columns in (i, n).
std::uint64_t strict_upper_mask(std::size_t w, std::size_t i, std::size_t n) {
  const std::size_t base = w * 64;
  const std::size_t lo = std::max(base, i + 1);
  const std::size_t hi = std::min(base + 64, n);
  if (lo >= hi) return 0;
  std::uint64_t m = hi - base == 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << (hi - base)) - 1;
  return m & (~std::uint64_t{0} << (lo - base));
}
}  // namespace

std::size_t SetColoring::exactly_p_violations() const {
  if (n < 2) return 0;
  std::size_t violations = 0;
  if (q > 15) {  // the sliced counter below has four planes (counts <= 15)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        int c = 0;
        for (int f = 0; f < q; ++f) c += color[f].test(i, j);
        if (c != p) ++violations;
      }
    }
    return violations;
  }
  const std::size_t words = color[0].words();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
      for (int f = 0; f < q; ++f) {
        std::uint64_t b = color[f].row(i)[w];
        std::uint64_t carry = c0 & b;
        c0 ^= b;
        b = carry;
        carry = c1 & b;
        c1 ^= b;
        b = carry;
        carry = c2 & b;
        c2 ^= b;
        c3 |= carry;
      }
      const std::uint64_t mismatch = (p & 1 ? ~c0 : c0) | (p & 2 ? ~c1 : c1) |
                                     (p & 4 ? ~c2 : c2) | (p & 8 ? ~c3 : c3);
      violations += std::popcount(mismatch & strict_upper_mask(w, i, n));
    }
  }
  return violations;
}

SimpleGraph SetColoring::color_class(int f) const {
  if (f < 0 || f >= q) throw std::invalid_argument("color_class: index out of range");
  SimpleGraph g(n, "color_" + std::to_string(f));
  g.adj = color[f];
  return g;
}

void SetColoring::complement_all() {
  for (auto& m : color) m.complement();
  p = q - p;
}

std::size_t SetColoring::cross_pairs() const {
  if (origins.empty()) return 0;
  std::size_t intra = 0;
  std::size_t run = 1;
  for (std::size_t v = 1; v < n; ++v) {
    if (origins[v].sphere == origins[v - 1].sphere) {
      ++run;
    } else {
      intra += run * (run - 1) / 2;
      run = 1;
    }
  }
  intra += run * (run - 1) / 2;
  return n * (n - 1) / 2 - intra;
}

std::size_t SetColoring::cross_edges(int f) const {
  if (origins.empty()) return 0;
  std::size_t intra_edges = 0;
  std::size_t begin = 0;
  for (std::size_t v = 1; v <= n; ++v) {
    if (v == n || origins[v].sphere != origins[begin].sphere) {
      for (std::size_t u = begin; u < v; ++u) {
        intra_edges += color[f].row_popcount_range(u, begin, v);
      }
      begin = v;
    }
  }
  return color[f].edge_count() - intra_edges / 2;
}

std::vector<int> intra_pair_colors(std::size_t r, std::size_t s, int p, int q) {
  if (r == s) throw std::invalid_argument("intra_pair_colors: indices must differ");
  if (r > s) std::swap(r, s);
  std::vector<int> out(p);
  for (int i = 0; i < p; ++i) {
    out[i] = static_cast<int>((r + s + static_cast<std::size_t>(i)) % q);
  }
  return out;
}

std::vector<int> assign_intra_sphere(const SphereFamily& family, std::size_t u,
                                     std::size_t v, int p, int q) {
  const VertexOrigin a = family.origin(u), b = family.origin(v);
  if (a.sphere != b.sphere) {
    throw std::invalid_argument("assign_intra_sphere: pair spans two spheres");
  }
  return intra_pair_colors(a.index + 1, b.index + 1, p, q);
}

SetColoring color_from_family(const SphereFamily& family, int p, int q, int threads) {
  if (p < 1 || p >= q) throw std::invalid_argument("color_from_family: need 1 <= p < q");
  const std::size_t n = family.total();
  SetColoring col(n, p, q);
  col.origins.resize(n);
  for (std::size_t v = 0; v < n; ++v) col.origins[v] = family.origin(v);
  col.info.construction = 1;
  col.info.k = family.params().k;
  col.info.t = family.params().t;
  col.info.eta = family.params().eta;
  col.info.seed = family.params().seed;
  col.info.mode = to_string(family.params().mode);
  col.info.sphere_sizes = family.sizes();

  // Each worker fills complete rows of every class, so rows are written by
  // exactly one thread and both directions of a pair get identical bits.
  parallel_for(0, n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t a = lo; a < hi; ++a) {
      const VertexOrigin oa = family.origin(a);
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a) continue;
        const VertexOrigin ob = family.origin(b);
        if (oa.sphere == ob.sphere) {
          for (int f : intra_pair_colors(oa.index + 1, ob.index + 1, p, q)) {
            col.color[f].set_bit(a, b);
          }
          continue;
        }
        const auto ip = oa.sphere < ob.sphere ? inner(family.point(a), family.point(b))
                                              : inner(family.point(b), family.point(a));
        if (std::abs(ip) < kZeroInnerTol) {
          throw ConstructionError("cross pair with zero inner product");
        }
        const int sector = sector_of(ip, q);
        for (int i = 0; i < p; ++i) {
          int f = sector - i;
          if (f < 0) f += q;
          col.color[f].set_bit(a, b);
        }
      }
    }
  });
  return col;
}

SetColoring rebuild_like(const SphereFamily& family, const SetColoring& reference,
                         int threads) {
  const int build_p =
      reference.info.construction == 2 ? reference.q - reference.p : reference.p;
  SetColoring rebuilt = color_from_family(family, build_p, reference.q, threads);
  if (reference.info.construction == 2) rebuilt.complement_all();
  rebuilt.info = reference.info;
  return rebuilt;
}

Construction build_construction1(int p, int q, int k, int t, std::size_t n, double eta,
                                 std::uint64_t seed, PointMode mode, int threads) {
  if (p < 1 || p >= q) throw std::invalid_argument("build_construction1: need 1 <= p < q");
  if (2 * p > q) {
    throw std::invalid_argument("build_construction1: needs p/q <= 1/2");
  }
  FamilyParams params{p, q, k, t, eta, seed, mode};
  SphereFamily family =
      SphereFamily::generate(params, std::vector<std::size_t>(t, n));
  SetColoring coloring = color_from_family(family, p, q, threads);
  return Construction{std::move(family), std::move(coloring)};
}

Construction build_construction2(int p, int q, int k, int t, std::size_t n, double eta,
                                 std::uint64_t seed, PointMode mode, int threads) {
  if (p < 1 || p >= q) throw std::invalid_argument("build_construction2: need 1 <= p < q");
  if (2 * p <= q) {
    throw std::invalid_argument("build_construction2: needs p/q > 1/2");
  }
  Construction c = build_construction1(q - p, q, k, t, n, eta, seed, mode, threads);
  c.coloring.complement_all();
  c.coloring.info.construction = 2;
  return c;
}

Construction build_for_ratio(int p, int q, int k, int t, std::size_t n, double eta,
                             std::uint64_t seed, PointMode mode, int threads) {
  return 2 * p <= q ? build_construction1(p, q, k, t, n, eta, seed, mode, threads)
                    : build_construction2(p, q, k, t, n, eta, seed, mode, threads);
}

}  // namespace qpc
