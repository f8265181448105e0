#include "netmaps/io.hpp"

#include <openssl/sha.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "netmaps/config.hpp"
#include "netmaps/errors.hpp"

namespace netmaps {

namespace {

Bytes pgm_header(int nx, int ny) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "P5\n%d %d\n255\n", nx, ny);
  return Bytes(buf, buf + len);
}

std::uint8_t shade(std::int32_t code, int budget) {
  if (code < 0) return 0;
  const long long t = std::min<long long>(code, budget);
  return static_cast<std::uint8_t>(55 + (200 * t) / budget);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Bytes encode_image(const Field2D& field, std::size_t layer) {
  if (layer != kIntersectionLayer && layer >= field.nodes()) {
    throw DimensionError("image layer " + std::to_string(layer) + " out of range");
  }
  const int nx = field.window().nx;
  const int ny = field.window().ny;
  Bytes out = pgm_header(nx, ny);
  out.reserve(out.size() + field.pixels());
  for (int iy = ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::int32_t code = layer == kIntersectionLayer ? field.first_escape(ix, iy) : field.code(layer, ix, iy);
      out.push_back(shade(code, field.budget()));
    }
  }
  return out;
}

Bytes encode_mask(const BinaryGrid& grid) {
  if (grid.rank() != 2) throw DimensionError("mask images need a 2-D grid");
  Bytes out = pgm_header(grid.nx(), grid.ny());
  for (int iy = grid.ny() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.nx(); ++ix) out.push_back(grid.at(ix, iy) ? 255 : 0);
  }
  return out;
}

Bytes encode_voxels(const BinaryGrid& grid) {
  char buf[96];
  const int len = std::snprintf(buf, sizeof buf, "VOX1 %d %d %d\n", grid.nx(), grid.ny(), grid.nz());
  Bytes out(buf, buf + len);
  out.insert(out.end(), grid.cells().begin(), grid.cells().end());
  return out;
}

std::string encode_metrics(const std::vector<MetricsRow>& rows) {
  std::string out =
      "job_id,model,a,b,f,c,L,R,resolution,component_count,occupied_cells,boxdim_slope,boxdim_r2\n";
  for (const auto& r : rows) {
    out += csv_field(r.job_id) + "," + csv_field(r.model) + "," + format_real(r.a) + "," + format_real(r.b) + "," +
           format_real(r.f) + "," + csv_field(r.c) + "," + std::to_string(r.budget) + "," + format_real(r.radius) +
           "," + csv_field(r.resolution) + "," + std::to_string(r.component_count) + "," +
           std::to_string(r.occupied_cells) + "," + format_real(r.boxdim_slope) + "," + format_real(r.boxdim_r2) +
           "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, Bytes(text.begin(), text.end()));
}

void write_image(const Field2D& field, const std::filesystem::path& path, std::size_t layer) {
  write_file(path, encode_image(field, layer));
}

void write_voxels(const Field3D& field, const std::filesystem::path& path) {
  write_file(path, encode_voxels(field.occupancy()));
}

void write_metrics(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
  write_file(path, encode_metrics(rows));
}

std::string sha256_hex(const Bytes& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(bytes.data(), bytes.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char d : digest) {
    out += hex[d >> 4];
    out += hex[d & 0xf];
  }
  return out;
}

}  // namespace netmaps
