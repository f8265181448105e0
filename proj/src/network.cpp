#include "netmaps/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "escape_kernel.hpp"
#include "netmaps/errors.hpp"

namespace netmaps {

namespace {

bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void check_block(const BinaryBlock& block, std::size_t half, const char* name) {
  if (block.size() != half) {
    throw DimensionError(std::string("block ") + name + " has " + std::to_string(block.size()) +
                         " rows, expected " + std::to_string(half));
  }
  for (const auto& row : block) {
    if (row.size() != half) {
      throw DimensionError(std::string("block ") + name + " has a row of length " +
                           std::to_string(row.size()) + ", expected " + std::to_string(half));
    }
    for (int v : row) {
      if (v != 0 && v != 1) throw DomainError(std::string("block ") + name + " entries must be 0 or 1");
    }
  }
}

}  // namespace

WeightMatrix::WeightMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (n_ == 0) throw DimensionError("weight matrix needs at least one node");
  if (entries_.size() != n_ * n_) {
    throw DimensionError("weight matrix of order " + std::to_string(n_) + " needs " + std::to_string(n_ * n_) +
                         " entries, got " + std::to_string(entries_.size()));
  }
  for (double v : entries_) require_finite(v, "weight");
}

WeightMatrix WeightMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1.0;
  return WeightMatrix(n, std::move(e));
}

WeightMatrix build_model(const ModelKind& kind, std::size_t n) {
  if (const auto* general = std::get_if<General>(&kind)) {
    if (general->weights.size() != n) {
      throw DimensionError("general model has " + std::to_string(general->weights.size()) +
                           " nodes, expected " + std::to_string(n));
    }
    return general->weights;
  }
  if (n != 3) throw DimensionError("the named coupling models have exactly 3 nodes");

  const Feedback p = std::visit(
      [](const auto& m) -> Feedback {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SimpleDual>) return {m.a, 0.0, 0.0};
        else if constexpr (std::is_same_v<T, SelfDrive>) return {m.a, m.b, 0.0};
        else if constexpr (std::is_same_v<T, Feedback>) return m;
        else return {};
      },
      kind);
  require_finite(p.a, "a");
  require_finite(p.b, "b");
  require_finite(p.f, "f");
  return WeightMatrix(3, {1.0, 0.0, 0.0,  //
                          p.a, 1.0, p.f,  //
                          1.0, 1.0, p.b});
}

WeightMatrix build_bipartite(std::size_t half, const BinaryBlock& m, const BinaryBlock& a1,
                             const BinaryBlock& a2, const CouplingWeights& g) {
  if (half == 0) throw DimensionError("clique size must be at least 1");
  check_block(m, half, "M");
  check_block(a1, half, "A1");
  check_block(a2, half, "A2");
  for (double v : {g.xx, g.xy, g.yx, g.yy}) require_finite(v, "coupling weight");

  const std::size_t n = 2 * half;
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < half; ++j) {
      e[i * n + j] = g.xx * m[i][j];
      e[i * n + half + j] = g.xy * a1[i][j];
      e[(half + i) * n + j] = g.yx * a2[i][j];
      e[(half + i) * n + half + j] = g.yy * m[i][j];
    }
  }
  return WeightMatrix(n, std::move(e));
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Largest multiple of bound representable; draws at or above it are rejected.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

BinaryBlock random_block(std::size_t half, std::size_t ones, SplitMix64& rng) {
  const std::size_t cells = half * half;
  if (ones > cells) {
    throw DomainError("cannot place " + std::to_string(ones) + " edges in a " + std::to_string(half) + "x" +
                      std::to_string(half) + " block");
  }
  // Partial Fisher-Yates over cell indices.
  std::vector<std::size_t> idx(cells);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < ones; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(cells - i));
    std::swap(idx[i], idx[j]);
  }
  BinaryBlock block(half, std::vector<int>(half, 0));
  for (std::size_t i = 0; i < ones; ++i) block[idx[i] / half][idx[i] % half] = 1;
  return block;
}

WeightMatrix build_bipartite_random(std::size_t half, std::size_t n_xy, std::size_t n_yx,
                                    const CouplingWeights& g, std::uint64_t seed) {
  if (half == 0) throw DimensionError("clique size must be at least 1");
  if (n_xy > half * half || n_yx > half * half) {
    throw DomainError("edge counts must lie in [0, " + std::to_string(half * half) + "]");
  }
  SplitMix64 rng(seed);
  BinaryBlock a1 = random_block(half, n_xy, rng);
  BinaryBlock a2 = random_block(half, n_yx, rng);
  BinaryBlock m(half, std::vector<int>(half, 1));
  return build_bipartite(half, m, a1, a2, g);
}

namespace detail {

template <class Tag>
NodeValues<Tag> NodeValues<Tag>::complex(std::vector<Complex> values) {
  for (const auto& v : values) {
    if (!finite(v)) throw DomainError("node values must be finite");
  }
  return from_iteration(Mode::Complex, std::move(values), false);
}

template <class Tag>
NodeValues<Tag> NodeValues<Tag>::real(const std::vector<double>& values) {
  std::vector<Complex> out;
  out.reserve(values.size());
  for (double v : values) {
    require_finite(v, "node value");
    out.emplace_back(v, 0.0);
  }
  return from_iteration(Mode::Real, std::move(out), false);
}

template <class Tag>
NodeValues<Tag> NodeValues<Tag>::equi(Mode mode, Complex value, std::size_t n) {
  if (mode == Mode::Real && value.imag() != 0.0) throw DomainError("real-mode values have no imaginary part");
  if (!finite(value)) throw DomainError("node values must be finite");
  return from_iteration(mode, std::vector<Complex>(n, value), false);
}

template class NodeValues<ParameterTag>;
template class NodeValues<StateTag>;

void validate_budget(int budget, double radius) {
  if (budget < 1) throw DomainError("iteration budget must be at least 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("escape radius must be positive and finite");
}

}  // namespace detail

namespace {

void check_shapes(const WeightMatrix& w, const ParameterVector& c, const StateVector& z) {
  if (c.size() != w.size() || z.size() != w.size()) {
    throw DimensionError("network has " + std::to_string(w.size()) + " nodes but got " + std::to_string(c.size()) +
                         " parameters and " + std::to_string(z.size()) + " states");
  }
  if (c.mode() != z.mode()) throw DimensionError("parameter and state modes differ");
}

}  // namespace

StateVector step(const WeightMatrix& w, const ParameterVector& c, const StateVector& z) {
  check_shapes(w, c, z);
  const std::size_t n = w.size();
  std::vector<Complex> out(n);
  bool overflowed = z.overflowed();
  for (std::size_t k = 0; k < n; ++k) {
    double sr = 0.0;
    double si = 0.0;
    const auto row = w.row(k);
    for (std::size_t j = 0; j < n; ++j) {
      sr += row[j] * z[j].real();
      si += row[j] * z[j].imag();
    }
    out[k] = Complex(sr * sr - si * si + c[k].real(), 2.0 * sr * si + c[k].imag());
    if (!finite(out[k])) overflowed = true;
  }
  return StateVector::from_iteration(z.mode(), std::move(out), overflowed);
}

bool EscapeRecord::all_bounded() const noexcept {
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeStatus& s) { return s.counts_as_bounded(); });
}

EscapeRecord iterate_escape(const WeightMatrix& w, const ParameterVector& c, const StateVector& z0, int budget,
                            double radius) {
  check_shapes(w, c, z0);
  detail::validate_budget(budget, radius);

  const std::size_t n = w.size();
  std::vector<double> cr(n), ci(n), zr(n), zi(n);
  for (std::size_t k = 0; k < n; ++k) {
    cr[k] = c[k].real();
    ci[k] = c[k].imag();
    zr[k] = z0[k].real();
    zi[k] = z0[k].imag();
  }
  std::vector<std::int32_t> codes(n);
  detail::EscapeKernel kernel(w, budget, radius);
  const int stop = c.mode() == Mode::Complex
                       ? kernel.run<true>(cr.data(), ci.data(), zr.data(), zi.data(), codes.data())
                       : kernel.run<false>(cr.data(), ci.data(), zr.data(), zi.data(), codes.data());

  EscapeRecord record;
  record.nodes.reserve(n);
  for (auto code : codes) record.nodes.push_back(detail::status_from_code(code));
  record.stop_iteration = stop;
  record.budget = budget;
  record.radius = radius;
  return record;
}

}  // namespace netmaps
