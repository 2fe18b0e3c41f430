#include "doctest.h"

#include "qcu/coupled_ho.hpp"
#include "qcu/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qcu;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Spread product of particle 1 from a time average along its exact trajectory.
double averaged_product(const Trajectory& t, const ScaledPair& scales) {
  const auto x = time_average(t, [](double x, double) { return x; }, 4096).value;
  const auto x2 = time_average(t, [](double x, double) { return x * x; }, 4096).value;
  const auto p = time_average(t, [](double, double p) { return p; }, 4096).value;
  const auto p2 = time_average(t, [](double, double p) { return p * p; }, 4096).value;
  return std::sqrt(x2 - x * x) / scales.x_scale * std::sqrt(p2 - p * p) / scales.p_scale;
}

double closed_form_equal_quantum(std::int64_t nc, std::int64_t nr, double wc, double wr) {
  const double c = 2.0 * static_cast<double>(nc) + 1.0;
  const double r = 2.0 * static_cast<double>(nr) + 1.0;
  return 0.25 * std::sqrt(1.0 + c * wr / (r * wc)) * std::sqrt(1.0 + c * wc / (r * wr));
}

}  // namespace

TEST_CASE("normal modes") {
  const NormalModes free = normal_modes_equal({2.0, 3.0, 0.0, 1.0, 1.0});
  CHECK(free.omega_c == doctest::Approx(std::sqrt(1.5)));
  CHECK(free.omega_r == free.omega_c);

  const NormalModes nm = normal_modes_equal({1.0, 1.0, 1.0, 1.0, 1.0});
  CHECK(nm.omega_c == doctest::Approx(1.0));
  CHECK(nm.omega_r == doctest::Approx(std::sqrt(3.0)));

  const auto once = apply(nm.transform, {0.3, -1.7});
  const auto twice = apply(nm.transform, once);
  CHECK(twice[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(twice[1] == doctest::Approx(-1.7).epsilon(1e-15));
  CHECK(once[0] == doctest::Approx((0.3 - 1.7) / std::sqrt(2.0)));
}

TEST_CASE("equal-mass classical product") {
  // w_c = w_r when k' = 0.
  CHECK(classical_product_equal({1.0, 1.0, 0.0, 2.0, 2.0}).particle1.value == doctest::Approx(0.5).epsilon(1e-15));

  // A_c = 1, A_r = 2, w_c = 1, w_r = 2 (k' = 1.5).
  const EqualMassSystem sys{1.0, 1.0, 1.5, 1.0, 2.0};
  const UncertaintyProduct u = classical_product_equal(sys);
  const double expected = 0.25 * std::sqrt(1.25) * std::sqrt(1.0625);
  CHECK(u.particle1.value == doctest::Approx(expected).epsilon(1e-15));
  CHECK(u.particle1.value == doctest::Approx(0.288111).epsilon(1e-6));
  CHECK(u.particle2.value == u.particle1.value);
  CHECK(u.particle1.value == u.particle1.dx * u.particle1.dp);
  CHECK(std::abs(averaged_product(particle1_trajectory(sys, kTwoPi), u.scales) - u.particle1.value) < 1e-6);

  const EqualMassSystem no_c{1.0, 1.0, 1.5, 0.0, 2.0};
  const UncertaintyProduct q = classical_product_equal(no_c);
  CHECK(q.particle1.value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(averaged_product(particle1_trajectory(no_c, kTwoPi), q.scales) - 0.25) < 1e-6);

  CHECK_THROWS_AS(classical_product_equal({1.0, 1.0, 1.0, 1.0, 0.0}), ScalingError);
  CHECK_THROWS_AS(classical_product_equal({1.0, 1.0, 1.0, 0.0, 0.0}), InputError);
}

TEST_CASE("time-average oracle over commensurate frequencies") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> amp(0.1, 3.0);
  // w_r / w_c in {2, 3, 3/2}; common period 2 pi q / w_c for w_r / w_c = p / q.
  const double ratios[][2] = {{2, 1}, {3, 1}, {3, 2}};
  for (const auto& pq : ratios) {
    const double wc = 0.7;
    const double wr = wc * pq[0] / pq[1];
    const double m = 1.3;
    const EqualMassSystem sys{m, m * wc * wc, 0.5 * (m * wr * wr - m * wc * wc), amp(rng), amp(rng)};
    const UncertaintyProduct u = classical_product_equal(sys);
    CHECK(std::abs(averaged_product(particle1_trajectory(sys, kTwoPi * pq[1] / wc), u.scales) - u.particle1.value) <
          1e-6);
  }
}

TEST_CASE("turning points") {
  CHECK(turning_point(0, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(turning_point(12, 1.0, 1.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
  const double m = 2.5;
  const double w = 0.3;
  const double hbar = 0.7;
  for (std::int64_t n : {0, 1, 7, 100}) {
    const double a = turning_point(n, m, w, hbar);
    CHECK(0.5 * m * w * w * a * a == doctest::Approx((static_cast<double>(n) + 0.5) * hbar * w).epsilon(1e-14));
  }
  CHECK_THROWS_AS(turning_point(-1, 1.0, 1.0, 1.0), InputError);
}

TEST_CASE("equal-mass quantum product") {
  CHECK(quantum_product_equal({1.0, 2.0, 0.0, 1.0, 1.0}, {4, 4, 1.0}).particle1.value ==
        doctest::Approx(0.5).epsilon(1e-14));

  // w_r = 3 w_c: k = m = 1, k' = 4.
  const UncertaintyProduct u = quantum_product_equal({1.0, 1.0, 4.0, 1.0, 1.0}, {0, 0, 1.0});
  CHECK(u.particle1.value == doctest::Approx(0.25 * 2.0 * std::sqrt(4.0 / 3.0)).epsilon(1e-14));
  CHECK(u.particle1.value == doctest::Approx(0.577350).epsilon(1e-6));
}

TEST_CASE("equal-mass quantum equals classical at the turning points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double m = u(rng);
    const double k = u(rng);
    const EqualMassSystem sys{m, k, u(rng), 1.0, 1.0};
    const QuantumModeState st{static_cast<std::int64_t>(rng() % 200), static_cast<std::int64_t>(rng() % 200), u(rng)};
    const UncertaintyProduct q = quantum_product_equal(sys, st);
    const UncertaintyProduct c = classical_product_equal(with_turning_points(sys, st));
    REQUIRE(rel(q.particle1.value, c.particle1.value) <= 1e-12);
    REQUIRE(rel(q.particle1.value, closed_form_equal_quantum(st.n_c, st.n_r, sys.omega_c(), sys.omega_r())) <= 1e-12);
  }
}

TEST_CASE("unequal-mass classical product") {
  // Equal masses: M = m and mu = m under M = (m1 + m2)/2.
  const UnequalMassSystem eq{2.0, 2.0, 1.0, 0.6, 1.0, 1.5};
  const double ratio = eq.omega_r() / eq.omega_c();
  const double expected = 0.25 * std::sqrt(1.0 + 1.5 * 1.5) * std::sqrt(1.0 + ratio * ratio * 1.5 * 1.5);
  CHECK(eq.total_mass() == 2.0);
  CHECK(eq.reduced_mass() == 2.0);
  CHECK(classical_product_unequal(eq).particle1.value == doctest::Approx(expected).epsilon(1e-14));

  const UnequalMassSystem no_r{1.0, 3.0, 1.0, 0.4, 1.0, 0.0};
  const UncertaintyProduct u = classical_product_unequal(no_r);
  CHECK(u.particle1.value == doctest::Approx(0.25 * 1.0 / 2.0).epsilon(1e-15));
  CHECK(u.particle2.value == doctest::Approx(0.25 * 3.0 / 2.0).epsilon(1e-15));
  // The mass ratio weights the momentum spread only.
  CHECK(u.particle1.dx == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u.particle1.dp == doctest::Approx(0.5 * 0.5).epsilon(1e-15));

  CHECK_THROWS_AS(classical_product_unequal({1.0, 2.0, 1.0, 0.0, 0.0, 1.0}), ScalingError);
}

TEST_CASE("particle exchange symmetry") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const UnequalMassSystem sys{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const UncertaintyProduct a = classical_product_unequal(sys);
    const UncertaintyProduct b = classical_product_unequal(sys.swapped());
    REQUIRE(a.particle1.value == b.particle2.value);
    REQUIRE(a.particle2.value == b.particle1.value);
    const QuantumModeState st{static_cast<std::int64_t>(rng() % 30), static_cast<std::int64_t>(rng() % 30), 1.0};
    const UncertaintyProduct qa = quantum_product_unequal(sys, st);
    const UncertaintyProduct qb = quantum_product_unequal(sys.swapped(), st);
    REQUIRE(qa.particle1.value == qb.particle2.value);
    REQUIRE(qa.particle2.value == qb.particle1.value);
  }
}

TEST_CASE("unequal-mass time-average oracle") {
  for (const auto& [m1, m2] : {std::pair{1.0, 3.0}, std::pair{2.5, 0.5}}) {
    UnequalMassSystem sys{m1, m2, 0.9, 0.0, 1.1, 0.7};
    // w_r = 2 w_c.
    sys.k = 1.5 * sys.omega * sys.omega * sys.reduced_mass();
    REQUIRE(sys.omega_r() == doctest::Approx(2.0 * sys.omega));
    const UncertaintyProduct u = classical_product_unequal(sys);
    const double period = kTwoPi / sys.omega;
    CHECK(std::abs(averaged_product(particle1_trajectory(sys, period), u.scales) - u.particle1.value) < 1e-6);
    CHECK(std::abs(averaged_product(particle1_trajectory(sys.swapped(), period), u.scales) - u.particle2.value) <
          1e-6);
  }
}

TEST_CASE("unequal-mass quantum product") {
  CHECK(quantum_product_unequal({1.5, 1.5, 2.0, 0.0, 1.0, 1.0}, {6, 6, 1.0}).particle1.value ==
        doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const UnequalMassSystem sys{u(rng), u(rng), u(rng), u(rng), 1.0, 1.0};
    const QuantumModeState st{static_cast<std::int64_t>(rng() % 200), static_cast<std::int64_t>(rng() % 200), u(rng)};
    const UncertaintyProduct q = quantum_product_unequal(sys, st);
    const UncertaintyProduct c = classical_product_unequal(with_turning_points(sys, st));
    REQUIRE(rel(q.particle1.value, c.particle1.value) <= 1e-12);
    REQUIRE(rel(q.particle2.value, c.particle2.value) <= 1e-12);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(EqualMassSystem{0.0, 1.0, 0.0, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(validate(EqualMassSystem{1.0, 1.0, -1.0, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(validate(UnequalMassSystem{1.0, 1.0, 1.0, -0.1, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(validate(QuantumModeState{-1, 0, 1.0}), InputError);
  CHECK_THROWS_AS(validate(QuantumModeState{0, 0, 0.0}), InputError);
}
