#pragma once

#include "netmaps/field.hpp"
#include "netmaps/network.hpp"

namespace netmaps {

inline constexpr int kDefaultSliceBudget = 100;
inline constexpr int kDefaultVoxelBudget = 50;
inline constexpr double kDefaultRadius = 10.0;

// Work is split by rows (2-D) or slices (3-D); threads == 0 uses every
// hardware thread. Results do not depend on the thread count.

// Equi-parameter sweep over c: critical orbit from the origin with (c, ..., c).
Field2D render_equi_m(const WeightMatrix& w, const Window2D& window, int budget = kDefaultSliceBudget,
                      double radius = kDefaultRadius, unsigned threads = 0);

// Diagonal seeds (z, ..., z) under a fixed complex parameter vector.
Field2D render_uni_j(const WeightMatrix& w, const ParameterVector& c, const Window2D& window,
                     int budget = kDefaultSliceBudget, double radius = kDefaultRadius, unsigned threads = 0);

// Real parameters (c1, c2, c3) over the box, critical orbit from the origin.
Field3D render_multi_m_real(const WeightMatrix& w, const Box3D& box, int budget = kDefaultVoxelBudget,
                            double radius = kDefaultRadius, unsigned threads = 0);

// Real seeds (x1, x2, x3) over the box under a fixed real parameter vector.
Field3D render_multi_j_real(const WeightMatrix& w, const ParameterVector& c, const Box3D& box,
                            int budget = kDefaultVoxelBudget, double radius = kDefaultRadius,
                            unsigned threads = 0);

// Occupied cells with at least one face neighbour (4 in 2-D, 6 in 3-D) that
// is empty or off the grid.
BinaryGrid extract_boundary(const BinaryGrid& grid);

}  // namespace netmaps
