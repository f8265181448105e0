#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "netmaps/field.hpp"
#include "netmaps/network.hpp"

namespace testsupport {

// Seeded generators for property tests; every suite uses a fixed seed so
// failures reproduce.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  netmaps::Complex complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

  netmaps::WeightMatrix weights(std::size_t n, double scale = 1.0) {
    std::vector<double> e(n * n);
    for (auto& v : e) v = uniform(-scale, scale);
    return netmaps::WeightMatrix(n, e);
  }

  std::vector<netmaps::Complex> complex_vector(std::size_t n, double r) {
    std::vector<netmaps::Complex> v(n);
    for (auto& x : v) x = complex(r);
    return v;
  }

  netmaps::BinaryGrid grid(int nx, int ny, double density) {
    netmaps::BinaryGrid g(nx, ny);
    for (auto& c : g.cells()) c = coin(density) ? 1 : 0;
    return g;
  }

  netmaps::BinaryGrid grid3(int nx, int ny, int nz, double density) {
    netmaps::BinaryGrid g(nx, ny, nz);
    for (auto& c : g.cells()) c = coin(density) ? 1 : 0;
    return g;
  }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

// Classical single-map escape step for z^2 + c with the same first-crossing
// rule and squared-magnitude test; -1 when bounded for the whole budget.
inline int classical_escape(netmaps::Complex c, netmaps::Complex z, int budget, double radius) {
  double re = z.real(), im = z.imag();
  for (int t = 0;; ++t) {
    if (!(re * re + im * im <= radius * radius)) return t;
    if (t == budget) return -1;
    const double nr = re * re - im * im + c.real();
    im = 2.0 * re * im + c.imag();
    re = nr;
  }
}

}  // namespace testsupport
