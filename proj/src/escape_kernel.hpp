#pragma once

#include <cstdint>
#include <vector>

#include "netmaps/network.hpp"

namespace netmaps::detail {

// Per-node escape codes shared by EscapeRecord conversion and field payloads.
inline constexpr std::int32_t kBoundedCode = -1;
inline constexpr std::int32_t kUndecidedCode = -2;

// Hot loop behind iterate_escape and the renderers. Holds scratch buffers, so
// one instance per worker thread.
class EscapeKernel {
 public:
  EscapeKernel(const WeightMatrix& w, int budget, double radius)
      : n_(w.size()),
        weights_(w.entries().begin(), w.entries().end()),
        budget_(budget),
        radius_sq_(radius * radius),
        zr_(n_),
        zi_(n_),
        nr_(n_),
        ni_(n_) {}

  std::size_t size() const noexcept { return n_; }

  // Writes one code per node (escape step, kBoundedCode or kUndecidedCode)
  // and returns the stop iteration. Imaginary arrays are ignored when
  // IsComplex is false.
  template <bool IsComplex>
  int run(const double* c_re, const double* c_im, const double* z_re, const double* z_im,
          std::int32_t* codes) {
    constexpr double cap_sq = kMagnitudeCap * kMagnitudeCap;
    std::size_t remaining = n_;
    bool capped = false;

    for (std::size_t k = 0; k < n_; ++k) {
      zr_[k] = z_re[k];
      zi_[k] = IsComplex ? z_im[k] : 0.0;
      codes[k] = kBoundedCode;
    }
    auto check = [&](int t) {
      for (std::size_t k = 0; k < n_; ++k) {
        const double m2 = IsComplex ? zr_[k] * zr_[k] + zi_[k] * zi_[k] : zr_[k] * zr_[k];
        // Negated comparisons so NaN counts as escaped and capped.
        if (codes[k] == kBoundedCode && !(m2 <= radius_sq_)) {
          codes[k] = t;
          --remaining;
        }
        if (!(m2 <= cap_sq)) capped = true;
      }
      return capped || remaining == 0;
    };

    int stop = budget_;
    if (check(0)) {
      stop = 0;
    } else {
      for (int t = 1; t <= budget_; ++t) {
        const double* wrow = weights_.data();
        for (std::size_t k = 0; k < n_; ++k, wrow += n_) {
          double sr = 0.0;
          double si = 0.0;
          for (std::size_t j = 0; j < n_; ++j) {
            sr += wrow[j] * zr_[j];
            if constexpr (IsComplex) si += wrow[j] * zi_[j];
          }
          if constexpr (IsComplex) {
            nr_[k] = sr * sr - si * si + c_re[k];
            ni_[k] = 2.0 * sr * si + c_im[k];
          } else {
            nr_[k] = sr * sr + c_re[k];
          }
        }
        zr_.swap(nr_);
        if constexpr (IsComplex) zi_.swap(ni_);
        if (check(t)) {
          stop = t;
          break;
        }
      }
    }
    if (stop < budget_) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (codes[k] == kBoundedCode) codes[k] = kUndecidedCode;
      }
    }
    return stop;
  }

 private:
  std::size_t n_;
  std::vector<double> weights_;
  int budget_;
  double radius_sq_;
  std::vector<double> zr_, zi_, nr_, ni_;
};

inline NodeStatus status_from_code(std::int32_t code) {
  if (code >= 0) return NodeStatus::escaped(code);
  return code == kBoundedCode ? NodeStatus::bounded() : NodeStatus::undecided();
}

void validate_budget(int budget, double radius);

}  // namespace netmaps::detail
