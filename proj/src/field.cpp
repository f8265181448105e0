#include "netmaps/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netmaps/errors.hpp"

namespace netmaps {

namespace {

void check_extent(int n, const char* axis) {
  if (n < 1) throw DimensionError(std::string("grid extent along ") + axis + " must be positive");
}

}  // namespace

BinaryGrid::BinaryGrid(int nx, int ny) : rank_(2), nx_(nx), ny_(ny), nz_(1) {
  check_extent(nx, "x");
  check_extent(ny, "y");
  cells_.assign(static_cast<std::size_t>(nx) * ny, 0);
}

BinaryGrid::BinaryGrid(int nx, int ny, int nz) : rank_(3), nx_(nx), ny_(ny), nz_(nz) {
  check_extent(nx, "x");
  check_extent(ny, "y");
  check_extent(nz, "z");
  cells_.assign(static_cast<std::size_t>(nx) * ny * nz, 0);
}

std::size_t BinaryGrid::occupied() const noexcept {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](auto v) { return v != 0; }));
}

double cell_center(double lo, double hi, int n, int i) {
  const double step = (hi - lo) / n;
  return 0.5 * (lo + hi) + (i + 0.5 - 0.5 * n) * step;
}

void Window2D::validate() const {
  if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max)) {
    throw DomainError("window bounds must be finite");
  }
  if (!(re_min < re_max) || !(im_min < im_max)) throw DomainError("window is degenerate: need min < max per axis");
  if (nx < 2 || ny < 2) throw DomainError("window needs at least 2 pixels per axis");
}

double Window2D::center_re(int ix) const { return cell_center(re_min, re_max, nx, ix); }
double Window2D::center_im(int iy) const { return cell_center(im_min, im_max, ny, iy); }

void Box3D::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!std::isfinite(min[a]) || !std::isfinite(max[a])) throw DomainError("box bounds must be finite");
    if (!(min[a] < max[a])) throw DomainError("box is degenerate: need min < max per axis");
    if (count[a] < 2) throw DomainError("box needs at least 2 voxels per axis");
  }
}

double Box3D::center(int axis, int i) const { return cell_center(min[axis], max[axis], count[axis], i); }

const char* set_kind_name(SetKind kind) {
  switch (kind) {
    case SetKind::EquiM: return "equi-m";
    case SetKind::UniJ: return "uni-j";
    case SetKind::MultiMReal: return "multi-m-real";
    case SetKind::MultiJReal: return "multi-j-real";
  }
  return "unknown";
}

Field2D::Field2D(const Window2D& window, SetKind kind, std::size_t nodes, int budget)
    : window_(window), kind_(kind), nodes_(nodes), budget_(budget) {
  window_.validate();
  codes_.assign(nodes_ * pixels(), kBounded);
}

NodeStatus Field2D::status(std::size_t node, int ix, int iy) const {
  const auto c = code(node, ix, iy);
  if (c >= 0) return NodeStatus::escaped(c);
  return c == kBounded ? NodeStatus::bounded() : NodeStatus::undecided();
}

BinaryGrid Field2D::node_layer(std::size_t node) const {
  BinaryGrid grid(window_.nx, window_.ny);
  const auto* src = codes_.data() + node * pixels();
  auto& dst = grid.cells();
  for (std::size_t i = 0; i < pixels(); ++i) dst[i] = src[i] < 0 ? 1 : 0;
  return grid;
}

BinaryGrid Field2D::intersection() const {
  BinaryGrid grid(window_.nx, window_.ny);
  auto& dst = grid.cells();
  std::fill(dst.begin(), dst.end(), std::uint8_t{1});
  for (std::size_t k = 0; k < nodes_; ++k) {
    const auto* src = codes_.data() + k * pixels();
    for (std::size_t i = 0; i < pixels(); ++i) {
      if (src[i] >= 0) dst[i] = 0;
    }
  }
  return grid;
}

std::int32_t Field2D::first_escape(int ix, int iy) const {
  std::int32_t best = kBounded;
  for (std::size_t k = 0; k < nodes_; ++k) {
    const auto c = code(k, ix, iy);
    if (c >= 0 && (best < 0 || c < best)) best = c;
  }
  return best;
}

Field3D::Field3D(const Box3D& box, SetKind kind, int budget)
    : box_(box), kind_(kind), budget_(budget), occupancy_() {
  box_.validate();
  occupancy_ = BinaryGrid(box_.count[0], box_.count[1], box_.count[2]);
  escape_.assign(occupancy_.cell_count(), Field2D::kBounded);
}

}  // namespace netmaps
