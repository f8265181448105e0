#include "netmaps/oracle.hpp"

#include <string>

#include "netmaps/errors.hpp"

namespace netmaps::oracle {

namespace {

void check_sizes(const RationalMatrix& w, const RationalState& c, const RationalState& z) {
  if (c.size() != w.size() || z.size() != w.size()) throw DimensionError("exact orbit inputs disagree in size");
}

// Next state for the nodes flagged in `active`; other entries are copied.
RationalState advance(const RationalMatrix& w, const RationalState& c, const RationalState& z,
                      const std::vector<bool>& active) {
  const std::size_t n = w.size();
  RationalState next(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!active[k]) {
      next[k] = z[k];
      continue;
    }
    RationalComplex input;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(w(k, j)) == 0) continue;
      input.re += w(k, j) * z[j].re;
      input.im += w(k, j) * z[j].im;
    }
    next[k] = input.square() + c[k];
  }
  return next;
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t n, std::vector<mpq_class> entries) : n_(n), entries_(std::move(entries)) {
  if (n_ == 0 || entries_.size() != n_ * n_) throw DimensionError("rational matrix needs n*n entries");
  for (auto& e : entries_) e.canonicalize();
}

RationalMatrix RationalMatrix::from(const WeightMatrix& w) {
  std::vector<mpq_class> e;
  e.reserve(w.entries().size());
  for (double v : w.entries()) e.emplace_back(v);
  return RationalMatrix(w.size(), std::move(e));
}

RationalMatrix RationalMatrix::three_node(const mpq_class& a, const mpq_class& b, const mpq_class& f) {
  return RationalMatrix(3, {1, 0, 0, a, 1, f, 1, 1, b});
}

mpq_class rational(const char* text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0) {
    throw DomainError(std::string("not a rational literal: ") + text);
  }
  q.canonicalize();
  return q;
}

RationalState equi(const RationalComplex& c, std::size_t n) { return RationalState(n, c); }

std::vector<RationalState> exact_orbit(const RationalMatrix& w, const RationalState& c, const RationalState& z0,
                                       int steps) {
  check_sizes(w, c, z0);
  if (steps < 1) throw DomainError("exact orbit needs at least one step");
  const std::vector<bool> all(w.size(), true);
  std::vector<RationalState> orbit;
  orbit.reserve(static_cast<std::size_t>(steps) + 1);
  orbit.push_back(z0);
  for (int t = 0; t < steps; ++t) orbit.push_back(advance(w, c, orbit.back(), all));
  return orbit;
}

EscapeRecord classify_point_exact(const RationalMatrix& w, const RationalState& c, int budget,
                                  const mpq_class& radius) {
  const std::size_t n = w.size();
  if (c.size() != n) throw DimensionError("parameter vector does not match the network");
  if (budget < 1) throw DomainError("iteration budget must be at least 1");
  if (sgn(radius) <= 0) throw DomainError("escape radius must be positive");

  const mpq_class radius_sq = radius * radius;
  std::vector<int> escaped_at(n, -1);
  std::size_t remaining = n;
  RationalState z(n);

  // Nodes whose values can still influence a node that has not escaped.
  auto needed = [&] {
    std::vector<bool> keep(n, false);
    std::vector<std::size_t> stack;
    for (std::size_t k = 0; k < n; ++k) {
      if (escaped_at[k] < 0) {
        keep[k] = true;
        stack.push_back(k);
      }
    }
    while (!stack.empty()) {
      const auto k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (!keep[j] && sgn(w(k, j)) != 0) {
          keep[j] = true;
          stack.push_back(j);
        }
      }
    }
    return keep;
  };

  auto record_escapes = [&](int t) {
    bool changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (escaped_at[k] < 0 && z[k].norm_squared() > radius_sq) {
        escaped_at[k] = t;
        --remaining;
        changed = true;
      }
    }
    return changed;
  };

  int stop = budget;
  record_escapes(0);
  std::vector<bool> active = needed();
  if (remaining == 0) {
    stop = 0;
  } else {
    for (int t = 1; t <= budget; ++t) {
      z = advance(w, c, z, active);
      if (record_escapes(t)) active = needed();
      if (remaining == 0) {
        stop = t;
        break;
      }
    }
  }

  EscapeRecord record;
  record.stop_iteration = stop;
  record.budget = budget;
  record.radius = radius.get_d();
  for (int t : escaped_at) record.nodes.push_back(t >= 0 ? NodeStatus::escaped(t) : NodeStatus::bounded());
  return record;
}

}  // namespace netmaps::oracle
