#include "qpcolor/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace qpc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Surface area of the unit sphere S^{dim-1} in R^dim.
double sphere_area(int dim) {
  return 2.0 * std::pow(kPi, dim / 2.0) / boost::math::tgamma(dim / 2.0);
}

// Round ideal counts to integers with error diffusion, then force the sum.
std::vector<std::size_t> round_preserving_sum(const std::vector<double>& y,
                                              std::size_t total) {
  std::vector<std::size_t> m(y.size(), 0);
  double carry = 0.0;
  std::size_t sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = y[i] + carry;
    long r = std::lround(t);
    if (r < 0) r = 0;
    m[i] = static_cast<std::size_t>(r);
    carry = t - static_cast<double>(r);
    sum += m[i];
  }
  while (sum > total) {
    auto it = std::max_element(m.begin(), m.end());
    --*it;
    --sum;
  }
  while (sum < total) {
    auto it = std::max_element(m.begin(), m.end());
    ++*it;
    ++sum;
  }
  return m;
}

struct LocalRegion {
  std::vector<double> center;  // unit vector in the node's own dimension
  double diameter;             // Euclidean diameter bound within the node's sphere
};

}  // namespace

double cap_measure_from_colatitude(int dim, double theta) {
  if (dim < 2) throw std::invalid_argument("cap_measure_from_colatitude: dim < 2");
  theta = std::clamp(theta, 0.0, kPi);
  if (dim == 2) return theta / kPi;
  if (theta > kPi / 2.0) return 1.0 - cap_measure_from_colatitude(dim, kPi - theta);
  const double s = std::sin(theta);
  return 0.5 * boost::math::ibeta((dim - 1) / 2.0, 0.5, s * s);
}

double colatitude_from_cap_measure(int dim, double v) {
  if (dim < 2) throw std::invalid_argument("colatitude_from_cap_measure: dim < 2");
  v = std::clamp(v, 0.0, 1.0);
  if (dim == 2) return v * kPi;
  if (v > 0.5) return kPi - colatitude_from_cap_measure(dim, 1.0 - v);
  const double x = boost::math::ibeta_inv((dim - 1) / 2.0, 0.5, 2.0 * v);
  return std::asin(std::sqrt(x));
}

struct EqualAreaPartition::Node {
  int dim = 2;            // this node partitions S^{dim-1}
  std::size_t count = 1;  // regions below this node

  struct Zone {
    double lo = 0.0;        // colatitude interval [lo, hi); the last zone closes at pi
    double hi = 0.0;
    std::size_t first = 0;  // index of the zone's first region within the node
    std::unique_ptr<Node> child;
  };
  std::vector<Zone> zones;  // empty for leaves (count == 1) and circles (dim == 2)

  static std::unique_ptr<Node> build(int dim, std::size_t count) {
    auto node = std::make_unique<Node>();
    node->dim = dim;
    node->count = count;
    if (count == 1 || dim == 2) return node;  // whole sphere, or equal arcs

    std::vector<std::size_t> collar_counts;
    if (count > 2) {
      const double theta_c =
          colatitude_from_cap_measure(dim, 1.0 / static_cast<double>(count));
      const double region_area = sphere_area(dim) / static_cast<double>(count);
      const double delta_ideal = std::pow(region_area, 1.0 / static_cast<double>(dim - 1));
      const auto n_collars = static_cast<std::size_t>(
          std::max(1L, std::lround((kPi - 2.0 * theta_c) / delta_ideal)));
      const double delta_fit = (kPi - 2.0 * theta_c) / static_cast<double>(n_collars);
      std::vector<double> ideal(n_collars);
      double prev = cap_measure_from_colatitude(dim, theta_c);
      for (std::size_t i = 0; i < n_collars; ++i) {
        const double next = cap_measure_from_colatitude(
            dim, theta_c + delta_fit * static_cast<double>(i + 1));
        ideal[i] = static_cast<double>(count) * (next - prev);
        prev = next;
      }
      collar_counts = round_preserving_sum(ideal, count - 2);
      std::erase(collar_counts, std::size_t{0});
    }

    // Zone boundaries from the inverse CDF at exact cumulative fractions, so
    // each zone holds exactly (regions inside)/count of the sphere.
    std::size_t cumulative = 1;
    double hi = colatitude_from_cap_measure(dim, 1.0 / static_cast<double>(count));
    node->zones.push_back(Zone{0.0, hi, 0, build(dim - 1, 1)});  // top cap
    std::size_t first = 1;
    for (std::size_t c : collar_counts) {
      cumulative += c;
      const double lo = hi;
      hi = colatitude_from_cap_measure(
          dim, static_cast<double>(cumulative) / static_cast<double>(count));
      node->zones.push_back(Zone{lo, hi, first, build(dim - 1, c)});
      first += c;
    }
    node->zones.push_back(Zone{hi, kPi, first, build(dim - 1, 1)});  // bottom cap
    return node;
  }

  std::size_t locate(std::span<const double> x) const {
    if (count == 1) return 0;
    if (dim == 2) {
      double a = std::atan2(x[1], x[0]);
      if (a < 0.0) a += kTwoPi;
      auto idx = static_cast<std::size_t>(a * static_cast<double>(count) / kTwoPi);
      return std::min(idx, count - 1);
    }
    const double theta = std::acos(std::clamp(x[0], -1.0, 1.0));
    const Zone* zone = &zones.back();
    for (const Zone& z : zones) {
      if (theta < z.hi) {
        zone = &z;
        break;
      }
    }
    if (zone->child->count == 1) return zone->first;
    std::span<const double> tail = x.subspan(1);
    double norm2 = 0.0;
    for (double v : tail) norm2 += v * v;
    if (norm2 <= 0.0) return zone->first;  // exactly on the axis
    std::vector<double> sub(tail.begin(), tail.end());
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : sub) v *= inv;
    return zone->first + zone->child->locate(sub);
  }

  // Region centers and diameter bounds, in region-id order, as unit vectors
  // of this node's sphere.  A collar region's diameter is bounded by the
  // band width plus the sub-region diameter scaled by the largest sine of
  // the colatitude over the band.
  std::vector<LocalRegion> describe() const {
    std::vector<LocalRegion> out;
    out.reserve(count);
    if (count == 1) {
      std::vector<double> pole(dim, 0.0);
      pole[0] = 1.0;
      out.push_back(LocalRegion{std::move(pole), 2.0});
      return out;
    }
    if (dim == 2) {
      const double gamma = kTwoPi / static_cast<double>(count);
      const double diam = gamma >= kPi ? 2.0 : 2.0 * std::sin(gamma / 2.0);
      for (std::size_t i = 0; i < count; ++i) {
        const double mid = gamma * (static_cast<double>(i) + 0.5);
        out.push_back(LocalRegion{{std::cos(mid), std::sin(mid)}, diam});
      }
      return out;
    }
    for (const Zone& z : zones) {
      if (z.child->count == 1) {  // polar cap
        const bool top = z.lo == 0.0;
        const double theta = top ? z.hi : kPi - z.lo;
        std::vector<double> c(dim, 0.0);
        c[0] = top ? 1.0 : -1.0;
        out.push_back(
            LocalRegion{std::move(c), theta >= kPi / 2.0 ? 2.0 : 2.0 * std::sin(theta)});
        continue;
      }
      const double mid = 0.5 * (z.lo + z.hi);
      const double band = 2.0 * std::sin(std::min(kPi / 2.0, 0.5 * (z.hi - z.lo)));
      double s_max = std::max(std::sin(z.lo), std::sin(z.hi));
      if (z.lo <= kPi / 2.0 && z.hi >= kPi / 2.0) s_max = 1.0;
      for (LocalRegion& sub : z.child->describe()) {
        LocalRegion r;
        r.center.reserve(dim);
        r.center.push_back(std::cos(mid));
        for (double v : sub.center) r.center.push_back(std::sin(mid) * v);
        r.diameter = std::min(2.0, band + s_max * sub.diameter);
        out.push_back(std::move(r));
      }
    }
    return out;
  }
};

EqualAreaPartition::EqualAreaPartition(int real_dim, std::size_t n)
    : real_dim_(real_dim), n_(n) {
  if (real_dim < 2) throw std::invalid_argument("EqualAreaPartition: real_dim must be >= 2");
  if (n == 0) throw std::invalid_argument("EqualAreaPartition: need at least one region");
  root_ = Node::build(real_dim, n);
}

EqualAreaPartition::~EqualAreaPartition() = default;
EqualAreaPartition::EqualAreaPartition(EqualAreaPartition&&) noexcept = default;
EqualAreaPartition& EqualAreaPartition::operator=(EqualAreaPartition&&) noexcept = default;

double EqualAreaPartition::measure(std::size_t id) const {
  if (id >= n_) throw std::out_of_range("EqualAreaPartition::measure");
  return 1.0 / static_cast<double>(n_);
}

std::size_t EqualAreaPartition::locate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != real_dim_) {
    throw std::invalid_argument("EqualAreaPartition::locate: wrong dimension");
  }
  return root_->locate(x);
}

bool EqualAreaPartition::contains(std::size_t id, std::span<const double> x) const {
  if (id >= n_) throw std::out_of_range("EqualAreaPartition::contains");
  return locate(x) == id;
}

std::vector<PartitionRegion> EqualAreaPartition::regions() const {
  std::vector<LocalRegion> local = root_->describe();
  std::vector<PartitionRegion> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < local.size(); ++i) {
    PartitionRegion r;
    r.id = i;
    r.center = std::move(local[i].center);
    double n2 = 0.0;
    for (double v : r.center) n2 += v * v;
    const double inv = 1.0 / std::sqrt(n2);  // cos/sin products are unit up to rounding
    for (double& v : r.center) v *= inv;
    r.measure = 1.0 / static_cast<double>(n_);
    r.diameter_bound = local[i].diameter;
    out.push_back(std::move(r));
  }
  return out;
}

double EqualAreaPartition::diameter_bound(std::size_t id) const {
  if (id >= n_) throw std::out_of_range("EqualAreaPartition::diameter_bound");
  return regions()[id].diameter_bound;
}

std::vector<double> EqualAreaPartition::center(std::size_t id) const {
  if (id >= n_) throw std::out_of_range("EqualAreaPartition::center");
  return regions()[id].center;
}

}  // namespace qpc
