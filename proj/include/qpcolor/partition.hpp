#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qpc {

struct PartitionRegion {
  std::size_t id = 0;
  std::vector<double> center;  // a point inside the region, on S^{real_dim-1}
  double measure = 0.0;        // 1/n for every region, equal by construction
  double diameter_bound = 0.0; // Euclidean diameter upper bound (reported, not tight)
};

// Partition of the unit sphere S^{real_dim-1} of R^{real_dim} into n regions
// of equal measure: recursive zonal construction (polar caps plus collars,
// each collar split by a partition of the sub-sphere one dimension down,
// bottoming out in equal arcs of a circle).  Cap boundaries come from
// inverting the colatitude CDF, so every region has measure exactly 1/n.
// Zones are half-open in colatitude and arcs half-open in angle, hence the
// regions are pairwise disjoint and cover the sphere.
class EqualAreaPartition {
 public:
  // Throws std::invalid_argument when real_dim < 2 or n == 0.
  EqualAreaPartition(int real_dim, std::size_t n);
  ~EqualAreaPartition();
  EqualAreaPartition(EqualAreaPartition&&) noexcept;
  EqualAreaPartition& operator=(EqualAreaPartition&&) noexcept;

  int real_dim() const { return real_dim_; }
  std::size_t size() const { return n_; }
  double measure(std::size_t id) const;
  double diameter_bound(std::size_t id) const;
  std::vector<double> center(std::size_t id) const;

  // Region containing x (nested cap/collar/sector tests); x must be a unit
  // vector of length real_dim.
  std::size_t locate(std::span<const double> x) const;
  bool contains(std::size_t id, std::span<const double> x) const;

  std::vector<PartitionRegion> regions() const;

 private:
  struct Node;
  int real_dim_;
  std::size_t n_;
  std::unique_ptr<Node> root_;
};

// Normalized measure of a polar cap of colatitude theta on S^{dim-1}
// (fraction of the sphere within angle theta of a pole), and its inverse.
double cap_measure_from_colatitude(int dim, double theta);
double colatitude_from_cap_measure(int dim, double v);

}  // namespace qpc
