#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace netmaps {

using Complex = std::complex<double>;

// Dense n x n real coupling matrix, row-major. Row k holds the weights node k
// reads from every node j: the input to node k is sum_j W(k, j) * z_j.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t n, std::vector<double> entries);

  static WeightMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const double> row(std::size_t k) const { return {entries_.data() + k * n_, n_}; }
  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

// The three 3-node couplings plus an arbitrary matrix. a: cross-talk z1 -> z2,
// b: self-loop on z3, f: feedback z3 -> z2.
struct SimpleDual {
  double a = 0.0;
};
struct SelfDrive {
  double a = 0.0;
  double b = 0.0;
};
struct Feedback {
  double a = 0.0;
  double b = 0.0;
  double f = 0.0;
};
struct General {
  WeightMatrix weights;
};
using ModelKind = std::variant<SimpleDual, SelfDrive, Feedback, General>;

WeightMatrix build_model(const ModelKind& kind, std::size_t n = 3);

// Square 0/1 matrix, one inner vector per row.
using BinaryBlock = std::vector<std::vector<int>>;

struct CouplingWeights {
  double xx = 0.0;
  double xy = 0.0;
  double yx = 0.0;
  double yy = 0.0;

  friend bool operator==(const CouplingWeights&, const CouplingWeights&) = default;
};

// Two cliques X and Y of `half` nodes each:
//   W = [[g.xx * M, g.xy * A1], [g.yx * A2, g.yy * M]]
WeightMatrix build_bipartite(std::size_t half, const BinaryBlock& m, const BinaryBlock& a1,
                             const BinaryBlock& a2, const CouplingWeights& g);

// Same layout with M all-ones and A1/A2 holding exactly n_xy/n_yx ones at
// positions drawn without replacement from a splitmix64 stream.
WeightMatrix build_bipartite_random(std::size_t half, std::size_t n_xy, std::size_t n_yx,
                                    const CouplingWeights& g, std::uint64_t seed);

// splitmix64 (Steele, Lea, Flood). Deterministic on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound) by rejection, bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Random 0/1 block with exactly `ones` set cells.
BinaryBlock random_block(std::size_t half, std::size_t ones, SplitMix64& rng);

enum class Mode { Complex, Real };

namespace detail {

template <class Tag>
class NodeValues {
 public:
  NodeValues() = default;

  static NodeValues complex(std::vector<Complex> values);
  static NodeValues real(const std::vector<double>& values);
  static NodeValues equi(Mode mode, Complex value, std::size_t n);

  Mode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  const Complex& operator[](std::size_t k) const { return values_[k]; }

  // Set by step() when an intermediate went non-finite.
  bool overflowed() const noexcept { return overflowed_; }

  friend bool operator==(const NodeValues&, const NodeValues&) = default;

  // Unchecked construction for results of iteration.
  static NodeValues from_iteration(Mode mode, std::vector<Complex> values, bool overflowed) {
    NodeValues v;
    v.mode_ = mode;
    v.values_ = std::move(values);
    v.overflowed_ = overflowed;
    return v;
  }

 private:
  Mode mode_ = Mode::Complex;
  std::vector<Complex> values_;
  bool overflowed_ = false;
};

struct ParameterTag;
struct StateTag;

}  // namespace detail

// (c_1, ..., c_n). Real mode keeps imaginary parts at zero.
using ParameterVector = detail::NodeValues<detail::ParameterTag>;
// (z_1, ..., z_n), same mode convention.
using StateVector = detail::NodeValues<detail::StateTag>;

// z'_k = (sum_j W(k, j) z_j)^2 + c_k.
StateVector step(const WeightMatrix& w, const ParameterVector& c, const StateVector& z);

// Orbits are abandoned once any node magnitude passes this cap.
inline constexpr double kMagnitudeCap = 1e75;

enum class NodeState { Bounded, Escaped, Undecided };

struct NodeStatus {
  NodeState state = NodeState::Bounded;
  int iteration = -1;  // first step with |z_k| > R when Escaped, -1 otherwise

  static NodeStatus bounded() { return {NodeState::Bounded, -1}; }
  static NodeStatus escaped(int t) { return {NodeState::Escaped, t}; }
  static NodeStatus undecided() { return {NodeState::Undecided, -1}; }

  // Undecided orbits were cut short without escaping; renderers treat them as bounded.
  bool counts_as_bounded() const noexcept { return state != NodeState::Escaped; }

  friend bool operator==(const NodeStatus&, const NodeStatus&) = default;
};

struct EscapeRecord {
  std::vector<NodeStatus> nodes;
  int stop_iteration = 0;
  int budget = 0;
  double radius = 0.0;

  bool all_bounded() const noexcept;

  friend bool operator==(const EscapeRecord&, const EscapeRecord&) = default;
};

// Iterates from z0 for at most `budget` steps. Node k escapes at the first t
// with |z_k(t)| > radius (t = 0 included). Iteration halts early once every
// node escaped or a magnitude passes kMagnitudeCap; survivors are Bounded when
// the full budget ran, Undecided otherwise.
EscapeRecord iterate_escape(const WeightMatrix& w, const ParameterVector& c, const StateVector& z0,
                            int budget, double radius);

}  // namespace netmaps
