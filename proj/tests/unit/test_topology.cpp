#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "netmaps/errors.hpp"
#include "netmaps/render.hpp"
#include "netmaps/topology.hpp"
#include "support.hpp"

using namespace netmaps;

namespace {

// Recursive flood fill, independent of the union-find labeller.
std::size_t flood_count(const BinaryGrid& g, int connectivity) {
  std::vector<int> seen(g.cell_count(), 0);
  const bool full = connectivity == 8 || connectivity == 26;
  std::function<void(int, int, int)> fill = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= g.nx() || y >= g.ny() || z >= g.nz()) return;
    const auto i = g.index(x, y, z);
    if (!g.cells()[i] || seen[i]) return;
    seen[i] = 1;
    for (int dz = -1; dz <= 1; ++dz) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int m = std::abs(dx) + std::abs(dy) + std::abs(dz);
          if (m == 0 || (!full && m != 1)) continue;
          fill(x + dx, y + dy, z + dz);
        }
      }
    }
  };
  std::size_t count = 0;
  for (int z = 0; z < g.nz(); ++z) {
    for (int y = 0; y < g.ny(); ++y) {
      for (int x = 0; x < g.nx(); ++x) {
        const auto i = g.index(x, y, z);
        if (g.cells()[i] && !seen[i]) {
          ++count;
          fill(x, y, z);
        }
      }
    }
  }
  return count;
}

BinaryGrid transpose(const BinaryGrid& g) {
  BinaryGrid out(g.ny(), g.nx());
  for (int y = 0; y < g.ny(); ++y) {
    for (int x = 0; x < g.nx(); ++x) out.set(y, x, g.at(x, y));
  }
  return out;
}

BinaryGrid mirror(const BinaryGrid& g) {
  BinaryGrid out(g.nx(), g.ny());
  for (int y = 0; y < g.ny(); ++y) {
    for (int x = 0; x < g.nx(); ++x) out.set(g.nx() - 1 - x, y, g.at(x, y));
  }
  return out;
}

BinaryGrid cantor_row(int level) {
  int n = 1;
  for (int i = 0; i < level; ++i) n *= 3;
  BinaryGrid g(n, 1);
  for (int x = 0; x < n; ++x) {
    bool in = true;
    for (int v = x; v > 0; v /= 3) in = in && v % 3 != 1;
    g.set(x, 0, in);
  }
  return g;
}

// Labels must be consistent with the neighbour relation and numbered in raster order.
void check_labels(const BinaryGrid& g, const ComponentLabeling& lab) {
  std::uint32_t next = 1;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (!g.cells()[i]) {
      REQUIRE(lab.labels[i] == 0);
      continue;
    }
    REQUIRE(lab.labels[i] >= 1);
    REQUIRE(lab.labels[i] <= next);
    if (lab.labels[i] == next) ++next;
  }
  REQUIRE(next - 1 == lab.component_count);
}

}  // namespace

TEST_CASE("component labelling examples", "[topology][label]") {
  const auto empty = label_components(BinaryGrid(8, 8));
  CHECK(empty.component_count == 0);

  BinaryGrid diag(2, 2);
  diag.set(0, 0, true);
  diag.set(1, 1, true);
  CHECK(label_components(diag, 4).component_count == 2);
  CHECK(label_components(diag, 8).component_count == 1);
  CHECK(label_components(diag).connectivity == 8);

  BinaryGrid corner(2, 2, 2);
  corner.set(0, 0, 0, true);
  corner.set(1, 1, 1, true);
  CHECK(label_components(corner, 6).component_count == 2);
  CHECK(label_components(corner, 26).component_count == 1);
  CHECK(label_components(corner).connectivity == 26);

  CHECK_THROWS_AS(label_components(diag, 6), DomainError);
  CHECK_THROWS_AS(label_components(diag, 26), DomainError);
  CHECK_THROWS_AS(label_components(corner, 8), DomainError);
  CHECK_THROWS_AS(label_components(corner, 5), DomainError);

  BinaryGrid bars(5, 3);
  for (int x = 0; x < 5; ++x) {
    bars.set(x, 0, true);
    bars.set(x, 2, x != 2);
  }
  const auto lab = label_components(bars, 4);
  CHECK(lab.component_count == 3);
  CHECK(lab.component_sizes() == std::vector<std::size_t>{5, 2, 2});
}

TEST_CASE("labelling agrees with a flood-fill oracle", "[topology][label][property]") {
  testsupport::Gen gen(808);
  for (int k = 0; k < 1000; ++k) {
    const auto g = gen.grid(16, 16, gen.uniform(0.1, 0.8));
    for (int conn : {4, 8}) {
      const auto lab = label_components(g, conn);
      REQUIRE(lab.component_count == flood_count(g, conn));
      check_labels(g, lab);
    }
  }
  for (int k = 0; k < 100; ++k) {
    const auto g = gen.grid3(8, 7, 6, gen.uniform(0.05, 0.5));
    for (int conn : {6, 26}) {
      const auto lab = label_components(g, conn);
      REQUIRE(lab.component_count == flood_count(g, conn));
      check_labels(g, lab);
    }
  }
}

TEST_CASE("component count ignores transposition and mirroring", "[topology][label][property]") {
  testsupport::Gen gen(909);
  for (int k = 0; k < 300; ++k) {
    const auto g = gen.grid(gen.integer(1, 30), gen.integer(1, 30), gen.uniform(0.2, 0.7));
    for (int conn : {4, 8}) {
      const auto n = label_components(g, conn).component_count;
      REQUIRE(label_components(transpose(g), conn).component_count == n);
      REQUIRE(label_components(mirror(g), conn).component_count == n);
    }
  }
}

TEST_CASE("subset and equality relations", "[topology][relation]") {
  testsupport::Gen gen(111);
  const auto a = gen.grid(20, 20, 0.4);
  const auto self = subset_relation(a, a);
  CHECK(self.holds);
  CHECK(self.violation_count == 0);
  CHECK(equality_relation(a, a).holds);

  auto b = a;
  for (std::size_t i = 0; i < b.cells().size(); ++i) {
    if (!b.cells()[i]) {
      b.cells()[i] = 1;
      break;
    }
  }
  CHECK(subset_relation(a, b).holds);
  const auto rev = subset_relation(b, a, 0.0);
  CHECK(rev.violation_count == 1);
  CHECK_FALSE(rev.holds);
  CHECK(rev.violation_fraction == Catch::Approx(1.0 / static_cast<double>(b.occupied())));
  CHECK(rev.sample_violations.size() == 1);
  CHECK(subset_relation(b, a, 1.0).holds);

  CHECK(subset_relation(BinaryGrid(20, 20), a).holds);
  CHECK(subset_relation(BinaryGrid(4, 4), BinaryGrid(4, 4)).violation_fraction == 0.0);

  CHECK_THROWS_AS(subset_relation(a, BinaryGrid(20, 21)), DimensionError);
  CHECK_THROWS_AS(equality_relation(a, BinaryGrid(20, 20, 1)), DimensionError);
  CHECK_THROWS_AS(subset_relation(a, BinaryGrid(20, 20, 2)), DimensionError);

  SECTION("equality holds exactly when both directions hold") {
    for (int k = 0; k < 500; ++k) {
      const auto x = gen.grid(12, 12, 0.5);
      auto y = x;
      const int flips = gen.integer(0, 3);
      for (int f = 0; f < flips; ++f) {
        auto& c = y.cells()[static_cast<std::size_t>(gen.integer(0, 143))];
        c = c ? 0 : 1;
      }
      const double tol = gen.uniform(0.0, 0.05);
      const auto eq = equality_relation(x, y, tol);
      const auto fw = subset_relation(x, y, tol);
      const auto bw = subset_relation(y, x, tol);
      REQUIRE(eq.holds == (fw.holds && bw.holds));
      REQUIRE(eq.violation_count == fw.violation_count + bw.violation_count);
      REQUIRE(eq.violation_fraction == std::max(fw.violation_fraction, bw.violation_fraction));
    }
  }
}

TEST_CASE("relations between node layers of the three-node models", "[topology][relation][scene]") {
  const auto win = Window2D::equi_m_default(600, 600);
  const auto dual = render_equi_m(build_model(SimpleDual{-2.0 / 3.0}), win);
  CHECK(subset_relation(dual.node_layer(1), dual.node_layer(0)).holds);

  const auto fb = render_equi_m(build_model(Feedback{-2.0 / 3.0, 1.0 / 3.0, -1.0}), win);
  CHECK(equality_relation(fb.node_layer(1), fb.node_layer(2)).holds);

  const auto sd = render_equi_m(build_model(SelfDrive{-2.0 / 3.0, 1.0 / 3.0}), win);
  CHECK_FALSE(equality_relation(sd.node_layer(1), sd.node_layer(2)).holds);
  CHECK(subset_relation(sd.node_layer(2), sd.node_layer(1)).holds);
  CHECK_FALSE(subset_relation(sd.node_layer(1), sd.node_layer(2)).holds);
}

TEST_CASE("nesting check", "[topology][nesting]") {
  testsupport::Gen gen(222);
  const auto g = gen.grid(10, 10, 0.5);
  for (const auto& r : nesting_check({g, g, g})) CHECK(r.holds);

  BinaryGrid big(10, 10), mid(10, 10), small(10, 10);
  for (int x = 0; x < 10; ++x) {
    for (int y = 0; y < 10; ++y) {
      big.set(x, y, true);
      mid.set(x, y, x < 6);
      small.set(x, y, x < 3 && y < 3);
    }
  }
  auto reports = nesting_check({big, mid, small});
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].holds);
  CHECK(reports[1].holds);
  reports = nesting_check({small, big});
  CHECK_FALSE(reports[0].holds);
  CHECK(reports[0].violation_count == 91);

  CHECK_THROWS_AS(nesting_check({g}), DomainError);
  CHECK_THROWS_AS(nesting_check({g, BinaryGrid(10, 11)}), DimensionError);
}

TEST_CASE("box-counting dimension fixtures", "[topology][boxdim]") {
  BinaryGrid line(64, 64);
  for (int x = 0; x < 64; ++x) line.set(x, 20, true);
  const auto l = box_counting_dim(line, {1, 2, 4, 8});
  CHECK(l.slope == Catch::Approx(1.0).margin(0.05));
  CHECK(l.counts == std::vector<std::size_t>{64, 32, 16, 8});
  CHECK(l.r_squared == Catch::Approx(1.0));

  BinaryGrid dot(64, 64);
  dot.set(5, 9, true);
  const auto d = box_counting_dim(dot, {1, 2, 4, 8});
  CHECK(d.slope == Catch::Approx(0.0).margin(0.05));
  CHECK(d.r_squared == 1.0);

  const auto cantor = box_counting_dim(cantor_row(5), {1, 3, 9, 27, 81});
  CHECK(cantor.slope == Catch::Approx(std::log(2.0) / std::log(3.0)).margin(0.05));

  BinaryGrid filled(32, 32);
  for (auto& c : filled.cells()) c = 1;
  CHECK(box_counting_dim(filled, {1, 2, 4, 8}).slope == Catch::Approx(2.0).margin(0.05));

  BinaryGrid solid(16, 16, 16);
  for (auto& c : solid.cells()) c = 1;
  CHECK(box_counting_dim(solid, {1, 2, 4}).slope == Catch::Approx(3.0).margin(0.05));

  CHECK(default_box_scales(BinaryGrid(1200, 1200)) == std::vector<int>{1, 2, 4, 8, 16});
  CHECK(default_box_scales(BinaryGrid(600, 600)) == std::vector<int>{1, 2, 4, 8});
  CHECK(default_box_scales(BinaryGrid(200, 200, 200)) == std::vector<int>{1, 2, 4, 8});

  CHECK_THROWS_AS(box_counting_dim(line, {1, 2}), DomainError);
  CHECK_THROWS_AS(box_counting_dim(line, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(box_counting_dim(BinaryGrid(64, 64), {1, 2, 4}), DomainError);
  CHECK_THROWS_AS(box_counting_dim(line, {1, 2, 0}), DomainError);
}

TEST_CASE("two disjoint copies keep the box-counting slope", "[topology][boxdim][property]") {
  testsupport::Gen gen(333);
  const auto cantor = cantor_row(5);
  BinaryGrid twice(486, 1);
  for (int x = 0; x < 243; ++x) {
    twice.set(x, 0, cantor.at(x, 0));
    twice.set(243 + x, 0, cantor.at(x, 0));
  }
  const std::vector<int> scales{1, 3, 9, 27, 81};
  CHECK(std::abs(box_counting_dim(twice, scales).slope - box_counting_dim(cantor, scales).slope) < 0.05);

  for (int k = 0; k < 20; ++k) {
    BinaryGrid pattern(64, 64);
    int x = 32, y = 32;
    for (int s = 0; s < 3000; ++s) {
      pattern.set(x, y, true);
      x = std::clamp(x + gen.integer(-1, 1), 0, 63);
      y = std::clamp(y + gen.integer(-1, 1), 0, 63);
    }
    BinaryGrid pair(128, 64);
    for (int py = 0; py < 64; ++py) {
      for (int px = 0; px < 64; ++px) {
        pair.set(px, py, pattern.at(px, py));
        pair.set(64 + px, py, pattern.at(px, py));
      }
    }
    const std::vector<int> sc{1, 2, 4, 8};
    CHECK(std::abs(box_counting_dim(pair, sc).slope - box_counting_dim(pattern, sc).slope) < 0.05);
  }
}

TEST_CASE("labelling of rendered scenes is independent of render threads", "[topology][property][scene]") {
  const auto win = Window2D::uni_j_default(400, 400);
  const auto w = build_model(SelfDrive{-2.0 / 3.0, -1.0 / 3.0});
  for (double c : {-1.0, -0.63}) {
    const auto c1 = ParameterVector::equi(Mode::Complex, c, 3);
    const auto one = label_components(render_uni_j(w, c1, win, 100, 10.0, 1).intersection());
    const auto many = label_components(render_uni_j(w, c1, win, 100, 10.0, 4).intersection());
    CHECK(one == many);
  }
  const auto box = Box3D::real_default(40);
  const auto w3 = build_model(SelfDrive{0.5, 1.0});
  const auto c3 = ParameterVector::real({-0.5, -0.7, -0.7});
  CHECK(label_components(render_multi_j_real(w3, c3, box, 50, 10.0, 1).occupancy()) ==
        label_components(render_multi_j_real(w3, c3, box, 50, 10.0, 3).occupancy()));
}
