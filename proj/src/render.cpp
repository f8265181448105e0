#include "netmaps/render.hpp"

#include <string>

#include "escape_kernel.hpp"
#include "netmaps/errors.hpp"
#include "netmaps/parallel.hpp"

namespace netmaps {

namespace {

void require_nodes(const WeightMatrix& w, const ParameterVector& c) {
  if (c.size() != w.size()) {
    throw DimensionError("parameter vector has " + std::to_string(c.size()) + " entries for " +
                         std::to_string(w.size()) + " nodes");
  }
}

void require_three(const WeightMatrix& w) {
  if (w.size() != 3) {
    throw UnsupportedDimensionError("real 3-D rendering needs a 3-node network, got " + std::to_string(w.size()));
  }
}

template <class PerCell>
Field2D render_slice(const WeightMatrix& w, const Window2D& window, SetKind kind, int budget, double radius,
                     unsigned threads, PerCell&& fill_inputs) {
  detail::validate_budget(budget, radius);
  Field2D field(window, kind, w.size(), budget);
  const std::size_t n = w.size();
  const std::size_t pixels = field.pixels();
  const unsigned workers = resolve_threads(threads);

  struct Scratch {
    detail::EscapeKernel kernel;
    std::vector<double> cr, ci, zr, zi;
    std::vector<std::int32_t> codes;
  };
  std::vector<Scratch> scratch;
  scratch.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) {
    scratch.push_back({detail::EscapeKernel(w, budget, radius), std::vector<double>(n), std::vector<double>(n),
                       std::vector<double>(n), std::vector<double>(n), std::vector<std::int32_t>(n)});
  }

  auto& codes = field.codes();
  parallel_for(static_cast<std::size_t>(window.ny), workers, [&](unsigned worker, std::size_t row) {
    auto& s = scratch[worker];
    const int iy = static_cast<int>(row);
    const double im = window.center_im(iy);
    for (int ix = 0; ix < window.nx; ++ix) {
      fill_inputs(Complex(window.center_re(ix), im), s.cr, s.ci, s.zr, s.zi);
      s.kernel.template run<true>(s.cr.data(), s.ci.data(), s.zr.data(), s.zi.data(), s.codes.data());
      const std::size_t p = row * static_cast<std::size_t>(window.nx) + ix;
      for (std::size_t k = 0; k < n; ++k) codes[k * pixels + p] = s.codes[k];
    }
  });
  return field;
}

template <class PerCell>
Field3D render_box(const WeightMatrix& w, const Box3D& box, SetKind kind, int budget, double radius,
                   unsigned threads, PerCell&& fill_inputs) {
  detail::validate_budget(budget, radius);
  require_three(w);
  Field3D field(box, kind, budget);
  const unsigned workers = resolve_threads(threads);
  std::vector<detail::EscapeKernel> kernels;
  kernels.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) kernels.emplace_back(w, budget, radius);

  auto& occupancy = field.occupancy();
  auto& escape = field.escape();
  const int nx = box.count[0];
  const int ny = box.count[1];

  std::vector<double> xs(nx), ys(ny);
  for (int i = 0; i < nx; ++i) xs[i] = box.center(0, i);
  for (int i = 0; i < ny; ++i) ys[i] = box.center(1, i);

  parallel_for(static_cast<std::size_t>(box.count[2]), workers, [&](unsigned worker, std::size_t slice) {
    auto& kernel = kernels[worker];
    const int iz = static_cast<int>(slice);
    const double zc = box.center(2, iz);
    double c[3];
    double z[3];
    std::int32_t codes[3];
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        fill_inputs(xs[ix], ys[iy], zc, c, z);
        kernel.template run<false>(c, nullptr, z, nullptr, codes);
        std::int32_t first = Field2D::kBounded;
        for (auto code : codes) {
          if (code >= 0 && (first < 0 || code < first)) first = code;
        }
        const std::size_t idx = occupancy.index(ix, iy, iz);
        occupancy.cells()[idx] = first < 0 ? 1 : 0;
        escape[idx] = first;
      }
    }
  });
  return field;
}

}  // namespace

Field2D render_equi_m(const WeightMatrix& w, const Window2D& window, int budget, double radius, unsigned threads) {
  window.validate();
  return render_slice(w, window, SetKind::EquiM, budget, radius, threads,
                      [](Complex c, auto& cr, auto& ci, auto& zr, auto& zi) {
                        for (std::size_t k = 0; k < cr.size(); ++k) {
                          cr[k] = c.real();
                          ci[k] = c.imag();
                          zr[k] = 0.0;
                          zi[k] = 0.0;
                        }
                      });
}

Field2D render_uni_j(const WeightMatrix& w, const ParameterVector& c, const Window2D& window, int budget,
                     double radius, unsigned threads) {
  window.validate();
  require_nodes(w, c);
  if (c.mode() != Mode::Complex) throw DomainError("uni-J rendering takes complex-mode parameters");
  return render_slice(w, window, SetKind::UniJ, budget, radius, threads,
                      [&c](Complex z, auto& cr, auto& ci, auto& zr, auto& zi) {
                        for (std::size_t k = 0; k < cr.size(); ++k) {
                          cr[k] = c[k].real();
                          ci[k] = c[k].imag();
                          zr[k] = z.real();
                          zi[k] = z.imag();
                        }
                      });
}

Field3D render_multi_m_real(const WeightMatrix& w, const Box3D& box, int budget, double radius, unsigned threads) {
  box.validate();
  return render_box(w, box, SetKind::MultiMReal, budget, radius, threads,
                    [](double x, double y, double z, double* c, double* seed) {
                      c[0] = x;
                      c[1] = y;
                      c[2] = z;
                      seed[0] = seed[1] = seed[2] = 0.0;
                    });
}

Field3D render_multi_j_real(const WeightMatrix& w, const ParameterVector& c, const Box3D& box, int budget,
                            double radius, unsigned threads) {
  box.validate();
  require_three(w);
  require_nodes(w, c);
  if (c.mode() != Mode::Real) throw DomainError("real multi-J rendering takes real-mode parameters");
  const double params[3] = {c[0].real(), c[1].real(), c[2].real()};
  return render_box(w, box, SetKind::MultiJReal, budget, radius, threads,
                    [&params](double x, double y, double z, double* cc, double* seed) {
                      cc[0] = params[0];
                      cc[1] = params[1];
                      cc[2] = params[2];
                      seed[0] = x;
                      seed[1] = y;
                      seed[2] = z;
                    });
}

BinaryGrid extract_boundary(const BinaryGrid& grid) {
  BinaryGrid out = grid;
  auto& dst = out.cells();
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int nz = grid.nz();
  const bool three = grid.rank() == 3;
  auto empty_or_outside = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) return true;
    return !grid.at(x, y, z);
  };
  for (int z = 0; z < nz; ++z) {
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x) {
        if (!grid.at(x, y, z)) continue;
        bool edge = empty_or_outside(x - 1, y, z) || empty_or_outside(x + 1, y, z) ||
                    empty_or_outside(x, y - 1, z) || empty_or_outside(x, y + 1, z);
        if (three) edge = edge || empty_or_outside(x, y, z - 1) || empty_or_outside(x, y, z + 1);
        dst[grid.index(x, y, z)] = edge ? 1 : 0;
      }
    }
  }
  return out;
}

}  // namespace netmaps
