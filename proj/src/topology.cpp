#include "netmaps/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "netmaps/errors.hpp"

namespace netmaps {

namespace {

struct Offset {
  int dx, dy, dz;
};

// Neighbours already visited in raster order (x fastest, then y, then z).
std::vector<Offset> backward_offsets(int rank, int connectivity) {
  std::vector<Offset> out;
  if (rank == 2) {
    if (connectivity != 4 && connectivity != 8) {
      throw DomainError("2-D connectivity must be 4 or 8, got " + std::to_string(connectivity));
    }
    out = {{-1, 0, 0}, {0, -1, 0}};
    if (connectivity == 8) {
      out.push_back({-1, -1, 0});
      out.push_back({1, -1, 0});
    }
    return out;
  }
  if (connectivity != 6 && connectivity != 26) {
    throw DomainError("3-D connectivity must be 6 or 26, got " + std::to_string(connectivity));
  }
  for (int dz = -1; dz <= 0; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const bool earlier = dz < 0 || (dz == 0 && dy < 0) || (dz == 0 && dy == 0 && dx < 0);
        if (!earlier) continue;
        const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (connectivity == 6 && manhattan != 1) continue;
        out.push_back({dx, dy, dz});
      }
    }
  }
  return out;
}

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index becomes the root.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

void require_same_shape(const BinaryGrid& a, const BinaryGrid& b) {
  if (!a.same_shape(b)) throw DimensionError("relation operands have different grids");
}

}  // namespace

std::vector<std::size_t> ComponentLabeling::component_sizes() const {
  std::vector<std::size_t> sizes(component_count, 0);
  for (auto l : labels) {
    if (l != 0) ++sizes[l - 1];
  }
  return sizes;
}

int default_connectivity(int rank) { return rank == 3 ? 26 : 8; }

ComponentLabeling label_components(const BinaryGrid& grid, int connectivity) {
  const auto offsets = backward_offsets(grid.rank(), connectivity);
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int nz = grid.nz();
  const auto& cells = grid.cells();

  DisjointSet sets(cells.size());
  for (int z = 0; z < nz; ++z) {
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x) {
        const std::size_t idx = grid.index(x, y, z);
        if (!cells[idx]) continue;
        for (const auto& o : offsets) {
          const int px = x + o.dx;
          const int py = y + o.dy;
          const int pz = z + o.dz;
          if (px < 0 || py < 0 || pz < 0 || px >= nx || py >= ny) continue;
          const std::size_t nidx = grid.index(px, py, pz);
          if (cells[nidx]) sets.unite(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(nidx));
        }
      }
    }
  }

  ComponentLabeling out;
  out.connectivity = connectivity;
  out.labels.assign(cells.size(), 0);
  // Roots are the smallest index of their class, so they are met before any
  // other member and get labels in raster order.
  std::vector<std::uint32_t> root_label(cells.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) continue;
    const auto root = sets.find(static_cast<std::uint32_t>(i));
    if (root_label[root] == 0) root_label[root] = ++next;
    out.labels[i] = root_label[root];
  }
  out.component_count = next;
  return out;
}

RelationReport subset_relation(const BinaryGrid& a, const BinaryGrid& b, double tolerance) {
  require_same_shape(a, b);
  constexpr std::size_t kSamples = 16;
  RelationReport report;
  std::size_t occupied = 0;
  const auto& ca = a.cells();
  const auto& cb = b.cells();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!ca[i]) continue;
    ++occupied;
    if (!cb[i]) {
      ++report.violation_count;
      if (report.sample_violations.size() < kSamples) report.sample_violations.push_back(i);
    }
  }
  report.violation_fraction =
      occupied == 0 ? 0.0 : static_cast<double>(report.violation_count) / static_cast<double>(occupied);
  report.holds = report.violation_fraction <= tolerance;
  return report;
}

RelationReport equality_relation(const BinaryGrid& a, const BinaryGrid& b, double tolerance) {
  const auto forward = subset_relation(a, b, tolerance);
  const auto backward = subset_relation(b, a, tolerance);
  RelationReport report;
  report.holds = forward.holds && backward.holds;
  report.violation_count = forward.violation_count + backward.violation_count;
  report.violation_fraction = std::max(forward.violation_fraction, backward.violation_fraction);
  report.sample_violations = forward.sample_violations;
  for (auto i : backward.sample_violations) {
    if (report.sample_violations.size() >= 16) break;
    report.sample_violations.push_back(i);
  }
  return report;
}

std::vector<RelationReport> nesting_check(const std::vector<BinaryGrid>& fields, double tolerance) {
  if (fields.size() < 2) throw DomainError("nesting check needs at least two fields");
  for (std::size_t i = 1; i < fields.size(); ++i) require_same_shape(fields[0], fields[i]);
  std::vector<RelationReport> out;
  out.reserve(fields.size() - 1);
  for (std::size_t i = 0; i + 1 < fields.size(); ++i) out.push_back(subset_relation(fields[i + 1], fields[i], tolerance));
  return out;
}

std::vector<int> default_box_scales(const BinaryGrid& grid) {
  int limit = std::min(grid.nx(), grid.ny());
  if (grid.rank() == 3) limit = std::min(limit, grid.nz());
  limit /= 8;
  std::vector<int> scales;
  for (int s = 1; s <= std::max(limit, 1); s *= 2) {
    const bool divides = grid.nx() % s == 0 && grid.ny() % s == 0 && (grid.rank() == 2 || grid.nz() % s == 0);
    if (divides) scales.push_back(s);
  }
  return scales;
}

DimensionEstimate box_counting_dim(const BinaryGrid& boundary, const std::vector<int>& scales) {
  if (scales.size() < 3) throw DomainError("box counting needs at least 3 scales");
  const int nx = boundary.nx();
  const int ny = boundary.ny();
  const int nz = boundary.nz();
  // Axes of extent 1 (a 2-D grid's z, or a single row) are not subdivided.
  auto divides = [](int extent, int s) { return extent == 1 || extent % s == 0; };
  for (int s : scales) {
    if (s < 1) throw DomainError("box scales must be positive");
    if (!divides(nx, s) || !divides(ny, s) || !divides(nz, s)) {
      throw DomainError("box scale " + std::to_string(s) + " does not divide the grid extents");
    }
  }

  DimensionEstimate est;
  est.scales = scales;
  std::vector<double> xs, ys;
  for (int s : scales) {
    const int sx = nx == 1 ? 1 : s;
    const int sy = ny == 1 ? 1 : s;
    const int sz = nz == 1 ? 1 : s;
    const int bx = nx / sx;
    const int by = ny / sy;
    const int bz = nz / sz;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(bx) * by * bz, 0);
    for (int z = 0; z < nz; ++z) {
      for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
          if (boundary.at(x, y, z)) hit[(static_cast<std::size_t>(z / sz) * by + y / sy) * bx + x / sx] = 1;
        }
      }
    }
    const auto count = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
    if (count == 0) throw DomainError("box counting of an empty field");
    est.counts.push_back(count);
    xs.push_back(std::log(1.0 / s));
    ys.push_back(std::log(static_cast<double>(count)));
  }

  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DomainError("box scales must be distinct");
  est.slope = sxy / sxx;
  // A flat count series is fitted exactly by slope 0.
  est.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return est;
}

}  // namespace netmaps
