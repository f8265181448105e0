#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "netmaps/network.hpp"

namespace netmaps {

// Occupancy grid, row-major with x fastest. Rank 2 grids have nz == 1.
class BinaryGrid {
 public:
  BinaryGrid() = default;
  BinaryGrid(int nx, int ny);
  BinaryGrid(int nx, int ny, int nz);

  int rank() const noexcept { return rank_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int nz() const noexcept { return nz_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }

  std::size_t index(int x, int y, int z = 0) const noexcept {
    return (static_cast<std::size_t>(z) * ny_ + y) * nx_ + x;
  }
  bool at(int x, int y, int z = 0) const { return cells_[index(x, y, z)] != 0; }
  void set(int x, int y, int z, bool v) { cells_[index(x, y, z)] = v ? 1 : 0; }
  void set(int x, int y, bool v) { set(x, y, 0, v); }

  std::vector<std::uint8_t>& cells() noexcept { return cells_; }
  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  std::size_t occupied() const noexcept;
  bool same_shape(const BinaryGrid& other) const noexcept {
    return rank_ == other.rank_ && nx_ == other.nx_ && ny_ == other.ny_ && nz_ == other.nz_;
  }

  friend bool operator==(const BinaryGrid&, const BinaryGrid&) = default;

 private:
  int rank_ = 2;
  int nx_ = 0;
  int ny_ = 0;
  int nz_ = 1;
  std::vector<std::uint8_t> cells_;
};

// Complex window sampled at cell centers. Column ix covers
// [re_min + ix*dx, re_min + (ix+1)*dx); rows likewise along the imaginary axis.
struct Window2D {
  double re_min = -1.75;
  double re_max = 1.25;
  double im_min = -1.5;
  double im_max = 1.5;
  int nx = 600;
  int ny = 600;

  void validate() const;
  double center_re(int ix) const;
  double center_im(int iy) const;
  Complex center(int ix, int iy) const { return {center_re(ix), center_im(iy)}; }

  static Window2D equi_m_default(int nx, int ny) { return {-1.75, 1.25, -1.5, 1.5, nx, ny}; }
  static Window2D uni_j_default(int nx, int ny) { return {-1.6, 1.6, -1.6, 1.6, nx, ny}; }

  friend bool operator==(const Window2D&, const Window2D&) = default;
};

struct Box3D {
  std::array<double, 3> min{-2.0, -2.0, -2.0};
  std::array<double, 3> max{2.0, 2.0, 2.0};
  std::array<int, 3> count{200, 200, 200};

  void validate() const;
  double center(int axis, int i) const;

  static Box3D real_default(int resolution) {
    return {{-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}, {resolution, resolution, resolution}};
  }

  friend bool operator==(const Box3D&, const Box3D&) = default;
};

// Cell-center coordinate of interval [lo, hi] split into n cells. Computed as
// midpoint + symmetric offset so windows centered on 0 give exact mirror pairs.
double cell_center(double lo, double hi, int n, int i);

enum class SetKind { EquiM, UniJ, MultiMReal, MultiJReal };

const char* set_kind_name(SetKind kind);

// Per-pixel, per-node escape data over a complex window.
class Field2D {
 public:
  // Payload codes: escape step t >= 0, or one of the sentinels below.
  static constexpr std::int32_t kBounded = -1;
  static constexpr std::int32_t kUndecided = -2;

  Field2D(const Window2D& window, SetKind kind, std::size_t nodes, int budget);

  const Window2D& window() const noexcept { return window_; }
  SetKind kind() const noexcept { return kind_; }
  std::size_t nodes() const noexcept { return nodes_; }
  int budget() const noexcept { return budget_; }
  std::size_t pixels() const noexcept { return static_cast<std::size_t>(window_.nx) * window_.ny; }

  std::int32_t code(std::size_t node, int ix, int iy) const {
    return codes_[node * pixels() + static_cast<std::size_t>(iy) * window_.nx + ix];
  }
  NodeStatus status(std::size_t node, int ix, int iy) const;

  // Cells where node `node` is bounded or undecided.
  BinaryGrid node_layer(std::size_t node) const;
  // Cells where every node is bounded or undecided.
  BinaryGrid intersection() const;
  // Earliest escape step over all nodes, or kBounded when no node escaped.
  std::int32_t first_escape(int ix, int iy) const;

  // Node-major: all pixels of node 0, then node 1, ...
  std::vector<std::int32_t>& codes() noexcept { return codes_; }
  const std::vector<std::int32_t>& codes() const noexcept { return codes_; }

  friend bool operator==(const Field2D&, const Field2D&) = default;

 private:
  Window2D window_;
  SetKind kind_;
  std::size_t nodes_;
  int budget_;
  std::vector<std::int32_t> codes_;
};

// Voxel occupancy over a real box plus the earliest escape step of any node
// (Field2D::kBounded where occupied).
class Field3D {
 public:
  Field3D(const Box3D& box, SetKind kind, int budget);

  const Box3D& box() const noexcept { return box_; }
  SetKind kind() const noexcept { return kind_; }
  int budget() const noexcept { return budget_; }

  const BinaryGrid& occupancy() const noexcept { return occupancy_; }
  BinaryGrid& occupancy() noexcept { return occupancy_; }
  std::vector<std::int32_t>& escape() noexcept { return escape_; }
  const std::vector<std::int32_t>& escape() const noexcept { return escape_; }

  friend bool operator==(const Field3D&, const Field3D&) = default;

 private:
  Box3D box_;
  SetKind kind_;
  int budget_;
  BinaryGrid occupancy_;
  std::vector<std::int32_t> escape_;
};

}  // namespace netmaps
