#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "netmaps/field.hpp"

namespace netmaps {

using Bytes = std::vector<std::uint8_t>;

// Layer selector for image encoding: a node index or the intersection.
inline constexpr std::size_t kIntersectionLayer = std::numeric_limits<std::size_t>::max();

// Binary PGM, top row = im_max. Bounded/undecided -> 0, escaped at t ->
// 55 + floor(200 t / L). The intersection layer shades by the earliest escape.
Bytes encode_image(const Field2D& field, std::size_t layer = kIntersectionLayer);
// Plain occupancy image: occupied -> 255, empty -> 0, same orientation.
Bytes encode_mask(const BinaryGrid& grid);
Bytes encode_voxels(const BinaryGrid& grid);

struct MetricsRow {
  std::string job_id;
  std::string model;
  double a = 0.0;
  double b = 0.0;
  double f = 0.0;
  std::string c;  // node parameters joined with ';', empty for parameter sweeps
  int budget = 0;
  double radius = 0.0;
  std::string resolution;  // e.g. 600x600
  std::size_t component_count = 0;
  std::size_t occupied_cells = 0;
  double boxdim_slope = 0.0;  // NaN when the boundary is too small to estimate
  double boxdim_r2 = 0.0;
};

std::string encode_metrics(const std::vector<MetricsRow>& rows);

void write_image(const Field2D& field, const std::filesystem::path& path, std::size_t layer = kIntersectionLayer);
void write_voxels(const Field3D& field, const std::filesystem::path& path);
void write_metrics(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);

// Throws IoError naming the path.
void write_file(const std::filesystem::path& path, const Bytes& bytes);
void write_file(const std::filesystem::path& path, const std::string& text);

std::string sha256_hex(const Bytes& bytes);

}  // namespace netmaps
