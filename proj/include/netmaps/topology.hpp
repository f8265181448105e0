#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netmaps/field.hpp"

namespace netmaps {

struct ComponentLabeling {
  std::vector<std::uint32_t> labels;  // 0 = background, components numbered 1..count in raster order
  std::size_t component_count = 0;
  int connectivity = 8;

  std::vector<std::size_t> component_sizes() const;

  friend bool operator==(const ComponentLabeling&, const ComponentLabeling&) = default;
};

// 8 for rank-2 grids, 26 for rank-3 grids.
int default_connectivity(int rank);

// Union-find labelling. Valid codes: 4 or 8 in 2-D, 6 or 26 in 3-D.
ComponentLabeling label_components(const BinaryGrid& grid, int connectivity);
inline ComponentLabeling label_components(const BinaryGrid& grid) {
  return label_components(grid, default_connectivity(grid.rank()));
}

inline constexpr double kDefaultRelationTolerance = 0.001;

struct RelationReport {
  bool holds = true;
  std::size_t violation_count = 0;
  double violation_fraction = 0.0;
  std::vector<std::size_t> sample_violations;  // first few violating cell indices
};

// Cells occupied in `a` but not in `b`, relative to a's occupied cells.
RelationReport subset_relation(const BinaryGrid& a, const BinaryGrid& b,
                               double tolerance = kDefaultRelationTolerance);

// Both directions; the reported fraction is the larger of the two.
RelationReport equality_relation(const BinaryGrid& a, const BinaryGrid& b,
                                 double tolerance = kDefaultRelationTolerance);

// subset_relation(fields[i + 1], fields[i]) for each adjacent pair.
std::vector<RelationReport> nesting_check(const std::vector<BinaryGrid>& fields,
                                          double tolerance = kDefaultRelationTolerance);

struct DimensionEstimate {
  double slope = 0.0;
  double r_squared = 0.0;
  std::vector<int> scales;
  std::vector<std::size_t> counts;
};

// Powers of two from 1 up to min extent / 8 that divide every non-trivial extent.
std::vector<int> default_box_scales(const BinaryGrid& grid);

// Ordinary least squares of log(occupied boxes) against log(1 / scale).
DimensionEstimate box_counting_dim(const BinaryGrid& boundary, const std::vector<int>& scales);
inline DimensionEstimate box_counting_dim(const BinaryGrid& boundary) {
  return box_counting_dim(boundary, default_box_scales(boundary));
}

}  // namespace netmaps
