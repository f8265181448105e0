#include <catch_amalgamated.hpp>

#include <cmath>

#include "netmaps/errors.hpp"
#include "netmaps/oracle.hpp"
#include "support.hpp"

using namespace netmaps;
using namespace netmaps::oracle;

namespace {

const RationalComplex kZero{0};

RationalState critical(std::size_t n) { return RationalState(n, kZero); }

double to_double(const mpq_class& q) { return q.get_d(); }

bool in_unit_interval(const mpq_class& v) { return v >= -1 && v <= 0; }

// Disagreements are only tolerated when some orbit value sits within 1e-6 of
// the radius before the earlier of the two verdicts.
bool grazes(const RationalMatrix& w, const RationalState& c, int steps, double radius) {
  const auto orbit = exact_orbit(w, c, critical(w.size()), steps);
  for (const auto& state : orbit) {
    for (const auto& z : state) {
      const double m = std::sqrt(to_double(z.norm_squared()));
      if (std::abs(m - radius) < 1e-6) return true;
      if (m > 1e6) return false;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("exact orbits", "[oracle][orbit]") {
  SECTION("classical node at c=-1 has period two") {
    const auto orbit = exact_orbit(RationalMatrix(1, {1}), {RationalComplex(-1)}, critical(1), 6);
    REQUIRE(orbit.size() == 7);
    for (std::size_t t = 0; t < orbit.size(); ++t) CHECK(orbit[t][0] == RationalComplex(t % 2 == 0 ? 0 : -1));
  }

  SECTION("simple dual a=-2/3 at c=-2") {
    const auto w = RationalMatrix::three_node(rational("-2/3"));
    const auto orbit = exact_orbit(w, equi(RationalComplex(-2), 3), critical(3), 4);
    const char* z2[] = {"0", "-2", "-14/9", "514/81", "151714/6561"};
    const char* z1[] = {"0", "-2", "2", "2", "2"};
    for (int t = 0; t <= 4; ++t) {
      CHECK(orbit[t][1] == RationalComplex(rational(z2[t])));
      CHECK(orbit[t][0] == RationalComplex(rational(z1[t])));
    }
    CHECK(orbit[2][2] == RationalComplex(14));
    CHECK(to_double(orbit[3][1].re) < 10.0);
    CHECK(to_double(orbit[4][1].re) > 10.0);
  }

  SECTION("complex values") {
    const auto w = RationalMatrix::three_node(0);
    const auto orbit = exact_orbit(w, equi(RationalComplex(0, 1), 3), critical(3), 2);
    CHECK(orbit[1][2] == RationalComplex(0, 1));
    CHECK(orbit[2][0] == RationalComplex(-1, 1));
    CHECK(orbit[2][2] == RationalComplex(-4, 1));
  }

  SECTION("self-drive a=-2/3, b=1/3 at c=-3/4 keeps z2 in [-1, 0]") {
    // Exact bit lengths double every step; 20 exact steps, then the float orbit.
    const auto w = RationalMatrix::three_node(rational("-2/3"), rational("1/3"));
    const auto orbit = exact_orbit(w, equi(RationalComplex(rational("-3/4")), 3), critical(3), 20);
    for (const auto& s : orbit) {
      REQUIRE(in_unit_interval(s[1].re));
      REQUIRE(s[1].im == 0);
    }
    const auto fw = build_model(SelfDrive{-2.0 / 3.0, 1.0 / 3.0});
    auto z = StateVector::equi(Mode::Real, 0.0, 3);
    const auto c = ParameterVector::equi(Mode::Real, -0.75, 3);
    for (int t = 1; t <= 100; ++t) {
      z = step(fw, c, z);
      if (t <= 20) REQUIRE(z[1].real() == Catch::Approx(to_double(orbit[t][1].re)).margin(1e-12));
      REQUIRE(z[1].real() >= -1.0);
      REQUIRE(z[1].real() <= 0.0);
    }
  }

  SECTION("errors") {
    CHECK_THROWS_AS(exact_orbit(RationalMatrix(1, {1}), {kZero}, critical(1), 0), DomainError);
    CHECK_THROWS_AS(exact_orbit(RationalMatrix(1, {1}), {kZero, kZero}, critical(1), 3), DimensionError);
    CHECK_THROWS_AS(exact_orbit(RationalMatrix(2, {1, 0, 0, 1}), {kZero, kZero}, critical(1), 3), DimensionError);
    CHECK_THROWS_AS(RationalMatrix(2, {1, 0, 0}), DimensionError);
    CHECK_THROWS_AS(rational("abc"), DomainError);
    CHECK_THROWS_AS(rational("1/0"), DomainError);
  }
}

TEST_CASE("exact classification", "[oracle][classify]") {
  const mpq_class radius(10);
  for (const auto& w : {RationalMatrix::three_node(rational("-2/3")),
                        RationalMatrix::three_node(rational("-2/3"), rational("1/3")),
                        RationalMatrix::three_node(rational("-2/3"), rational("1/3"), -1)}) {
    const auto rec = classify_point_exact(w, equi(kZero, 3), 100, radius);
    CHECK(rec.all_bounded());
    CHECK(rec.stop_iteration == 100);
  }

  const auto rec = classify_point_exact(RationalMatrix::three_node(rational("-2/3")), equi(RationalComplex(-2), 3), 100,
                                        radius);
  CHECK(rec.nodes[0] == NodeStatus::bounded());
  CHECK(rec.nodes[1] == NodeStatus::escaped(4));
  CHECK(rec.nodes[2] == NodeStatus::escaped(2));
  CHECK(rec.stop_iteration == 100);
  CHECK(rec.radius == 10.0);

  CHECK_THROWS_AS(classify_point_exact(RationalMatrix(1, {1}), equi(kZero, 2), 10, radius), DimensionError);
  CHECK_THROWS_AS(classify_point_exact(RationalMatrix(1, {1}), equi(kZero, 1), 0, radius), DomainError);
  CHECK_THROWS_AS(classify_point_exact(RationalMatrix(1, {1}), equi(kZero, 1), 10, 0), DomainError);
}

TEST_CASE("orbits do not depend on how rationals are written", "[oracle][property]") {
  std::vector<mpq_class> raw{1, 0, 0, 0, 1, 0, 1, 1, 0};
  raw[3].get_num() = 4;
  raw[3].get_den() = -6;  // -2/3 in non-canonical form
  const RationalMatrix loose(3, raw);
  const auto tidy = RationalMatrix::three_node(rational("-2/3"));
  CHECK(loose(1, 0) == tidy(1, 0));

  mpq_class c;
  c.get_num() = -10;
  c.get_den() = 8;
  const auto a = exact_orbit(loose, equi(RationalComplex(c), 3), critical(3), 5);
  const auto b = exact_orbit(tidy, equi(RationalComplex(rational("-5/4")), 3), critical(3), 5);
  CHECK(a == b);
  for (const auto& s : a) {
    for (const auto& z : s) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), z.re.get_num_mpz_t(), z.re.get_den_mpz_t());
      CHECK(g == 1);
      CHECK(z.re.get_den() > 0);
    }
  }
  CHECK(rational("2/4") == rational("1/2"));
  CHECK(rational("-6/-4") == rational("3/2"));
}

TEST_CASE("z^2 + z - 1/2 maps [-1, 0] into itself", "[oracle][property]") {
  testsupport::Gen gen(121);
  for (int k = 0; k < 1000; ++k) {
    const int den = gen.integer(1, 1000);
    mpq_class z(-gen.integer(0, den), den);
    z.canonicalize();
    REQUIRE(in_unit_interval(z));
    REQUIRE(in_unit_interval(z * z + z - mpq_class(1, 2)));
  }
}

TEST_CASE("float and exact iteration agree", "[oracle][property]") {
  testsupport::Gen gen(131);
  const char* weights[] = {"-2/3", "-1/3", "0", "1/3", "2/3", "1/2", "-1"};

  SECTION("escape verdicts on random rational parameters") {
    // Bounded exact orbits double their bit length every step, so the budget stays short.
    constexpr int kBudget = 12;
    int disagreements = 0;
    for (int k = 0; k < 500; ++k) {
      const auto a = rational(weights[gen.integer(0, 6)]);
      const auto b = rational(weights[gen.integer(0, 6)]);
      const auto f = rational(weights[gen.integer(0, 6)]);
      const mpq_class re(gen.integer(-9, 4), gen.integer(1, 4));
      const mpq_class im(gen.integer(-6, 6), gen.integer(1, 4));
      const RationalComplex cq(re, im);
      const auto wq = RationalMatrix::three_node(a, b, f);
      const auto exact = classify_point_exact(wq, equi(cq, 3), kBudget, 10);

      const auto wf = build_model(Feedback{a.get_d(), b.get_d(), f.get_d()});
      const Complex cf(re.get_d(), im.get_d());
      const auto fl = iterate_escape(wf, ParameterVector::equi(Mode::Complex, cf, 3),
                                     StateVector::equi(Mode::Complex, 0.0, 3), kBudget, 10.0);
      for (std::size_t j = 0; j < 3; ++j) {
        const auto& e = exact.nodes[j];
        const auto& x = fl.nodes[j];
        bool agree = false;
        switch (x.state) {
          case NodeState::Escaped: agree = e == x; break;
          case NodeState::Bounded: agree = e.state == NodeState::Bounded; break;
          case NodeState::Undecided:
            agree = e.state == NodeState::Bounded || (e.state == NodeState::Escaped && e.iteration > fl.stop_iteration);
            break;
        }
        if (!agree) {
          ++disagreements;
          REQUIRE(grazes(wq, equi(cq, 3), std::min(kBudget, 8), 10.0));
        }
      }
    }
    CHECK(disagreements <= 5);
  }

  SECTION("orbit values while magnitudes stay below the radius") {
    for (int k = 0; k < 12; ++k) {
      constexpr int kSteps = 16;
      const auto a = rational(weights[gen.integer(0, 6)]);
      const auto b = rational(weights[gen.integer(0, 6)]);
      const mpq_class re(gen.integer(-7, 1), 4);
      const mpq_class im(gen.integer(-3, 3), 4);
      const auto wq = RationalMatrix::three_node(a, b);
      const auto exact = exact_orbit(wq, equi(RationalComplex(re, im), 3), critical(3), kSteps);
      const auto wf = build_model(SelfDrive{a.get_d(), b.get_d()});
      const auto cf = ParameterVector::equi(Mode::Complex, Complex(re.get_d(), im.get_d()), 3);
      auto z = StateVector::equi(Mode::Complex, 0.0, 3);
      for (int t = 1; t <= kSteps; ++t) {
        z = step(wf, cf, z);
        bool small = true;
        for (const auto& v : exact[t]) small = small && v.norm_squared() < 100;
        if (!small) break;
        for (std::size_t j = 0; j < 3; ++j) {
          REQUIRE(std::abs(z[j].real() - exact[t][j].re.get_d()) < 1e-9);
          REQUIRE(std::abs(z[j].imag() - exact[t][j].im.get_d()) < 1e-9);
        }
      }
    }
  }
}
