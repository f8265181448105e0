#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "netmaps/network.hpp"

namespace netmaps::oracle {

// Exact complex rational. Arithmetic results are canonical already; the
// constructor normalizes hand-assembled numerators and denominators.
struct RationalComplex {
  mpq_class re;
  mpq_class im;

  RationalComplex() = default;
  RationalComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  mpq_class norm_squared() const { return re * re + im * im; }
  RationalComplex square() const { return {re * re - im * im, 2 * re * im}; }

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) { return a.re == b.re && a.im == b.im; }
};

using RationalState = std::vector<RationalComplex>;

class RationalMatrix {
 public:
  RationalMatrix(std::size_t n, std::vector<mpq_class> entries);

  // Exact value of every double entry.
  static RationalMatrix from(const WeightMatrix& w);
  // Rows (1,0,0), (a,1,f), (1,1,b); SimpleDual is b = f = 0, SelfDrive f = 0.
  static RationalMatrix three_node(const mpq_class& a, const mpq_class& b = 0, const mpq_class& f = 0);

  std::size_t size() const noexcept { return n_; }
  const mpq_class& operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }

 private:
  std::size_t n_;
  std::vector<mpq_class> entries_;
};

// Parses "p/q" or an integer; throws DomainError on malformed text.
mpq_class rational(const char* text);

RationalState equi(const RationalComplex& c, std::size_t n);

// z0 followed by `steps` exact applications of the network map.
std::vector<RationalState> exact_orbit(const RationalMatrix& w, const RationalState& c, const RationalState& z0,
                                       int steps);

// Critical-orbit classification in exact arithmetic, |z|^2 compared with R^2.
// Escaped nodes that no surviving node reads from (directly or indirectly)
// are dropped from the iteration; this does not change any verdict.
EscapeRecord classify_point_exact(const RationalMatrix& w, const RationalState& c, int budget,
                                  const mpq_class& radius);

}  // namespace netmaps::oracle
