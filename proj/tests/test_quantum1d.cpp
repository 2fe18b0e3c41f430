#include "doctest.h"

#include "qcu/errors.hpp"
#include "qcu/quadrature.hpp"
#include "qcu/quantum1d.hpp"

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hermite.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace qcu;

TEST_CASE("Hermite polynomials") {
  CHECK(hermite_eval(0, 0.7) == 1.0);
  CHECK(hermite_eval(1, 0.7) == doctest::Approx(1.4));
  CHECK(hermite_eval(2, 1.0) == doctest::Approx(2.0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (unsigned n = 0; n <= 60; ++n) {
    for (int i = 0; i < 20; ++i) {
      const double x = u(rng);
      const double expected = boost::math::hermite(n, x);
      REQUIRE(hermite_eval(n, x) == doctest::Approx(expected).epsilon(1e-11).scale(1e-300));
      REQUIRE(hermite_gauss(n, x) == doctest::Approx(expected * std::exp(-0.5 * x * x)).epsilon(1e-11).scale(1e-300));
    }
  }
  CHECK_THROWS_AS(hermite_eval(-1, 0.0), InputError);
}

TEST_CASE("large-degree Hermite values stay finite with the Gaussian folded in") {
  // H_250(20) is about e^900 and exp(-200) folds it back into range.
  const double v = hermite_gauss(250, 20.0);
  CHECK(std::isfinite(v));
  const LogHermite lh = log_hermite(250, 20.0);
  CHECK(lh.log_abs > 710.0);
  CHECK(std::log(std::abs(v)) == doctest::Approx(lh.log_abs - 200.0).epsilon(1e-12));
  CHECK(std::isinf(hermite_eval(250, 20.0)));
}

TEST_CASE("Hermite orthogonality by Gauss-Hermite quadrature") {
  const QuadratureRule rule = gauss_hermite(40);
  for (std::int64_t m = 0; m <= 10; ++m) {
    for (std::int64_t n = 0; n <= 10; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * hermite_eval(m, rule.nodes[i]) * hermite_eval(n, rule.nodes[i]);
      const double norm = std::sqrt(std::numbers::pi) * std::pow(2.0, static_cast<double>(n)) *
                          boost::math::factorial<double>(static_cast<unsigned>(n));
      if (m == n)
        CHECK(s / norm == doctest::Approx(1.0).epsilon(1e-12));
      else
        CHECK(std::abs(s) / norm < 1e-8);
    }
  }
}

TEST_CASE("Gauss rules") {
  for (std::size_t n : {1, 2, 7, 64, 300, 1000}) {
    const QuadratureRule r = gauss_hermite(n);
    double s0 = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s0 += r.weights[i];
      s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
      if (i > 0) REQUIRE(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(s0 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    if (n > 1) CHECK(s2 == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  }
  const QuadratureRule gl = gauss_legendre(16);
  double s = 0.0;
  for (std::size_t i = 0; i < 16; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 30);
  CHECK(s == doctest::Approx(2.0 / 31.0).epsilon(1e-14));
  CHECK(integrate_gl([](double x) { return std::cos(x); }, 0.0, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("eigenstates are normalized") {
  boost::math::quadrature::sinh_sinh<double> integrator;
  for (std::int64_t n : {0, 1, 5, 20, 40}) {
    const HOEigenstate phi(n, 1.7, 0.4, 1.1);
    const double total = integrator.integrate([&](double x) { return phi.density(x); });
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
  for (std::int64_t n = 0; n <= 20; ++n) {
    const HOEigenstate phi(n, 2.0, 3.0, 0.5);
    const double standard = -0.5 * std::log(std::sqrt(std::numbers::pi) * phi.x0() *
                                            std::pow(2.0, static_cast<double>(n)) *
                                            boost::math::factorial<double>(static_cast<unsigned>(n)));
    CHECK(phi.log_norm() == doctest::Approx(standard).epsilon(1e-12));
  }
}

TEST_CASE("eigenstate parity") {
  for (std::int64_t n : {0, 3, 8, 35}) {
    const HOEigenstate phi(n, 1.0, 1.0, 1.0);
    for (double x : {0.1, 0.77, 2.5, 6.0}) REQUIRE(phi.density(-x) == phi.density(x));
  }
}

TEST_CASE("oscillator moments") {
  const MomentSet g = ho_moments(0, 1.0, 1.0, 1.0);
  CHECK(g.mean_x2 == 0.5);
  CHECK(g.mean_x2 * g.mean_p2 == doctest::Approx(0.25));
  CHECK(ho_moments(10, 1.0, 1.0, 1.0).mean_x2 == 10.5);
  const MomentSet q10 = ho_moments_quadrature(10, 1.0, 1.0, 1.0);
  CHECK(q10.mean_x2 == doctest::Approx(10.5).epsilon(1e-12));
  CHECK(q10.method == MomentMethod::quadrature);

  for (std::int64_t n = 0; n <= 50; ++n) {
    const MomentSet a = ho_moments(n, 0.9, 1.3, 1.2);
    const MomentSet q = ho_moments_quadrature(n, 0.9, 1.3, 1.2);
    REQUIRE(std::abs(q.mean_x2 - a.mean_x2) / a.mean_x2 <= 1e-8);
    REQUIRE(std::abs(q.mean_p2 - a.mean_p2) / a.mean_p2 <= 1e-8);
    REQUIRE(std::abs(q.mean_x) < 1e-12);
  }
  const MomentSet a = ho_moments(300, 1.0, 1.0, 1.0);
  const MomentSet q = ho_moments_quadrature(300, 1.0, 1.0, 1.0);
  CHECK(q.mean_x2 == doctest::Approx(a.mean_x2).epsilon(1e-10));
  CHECK(q.mean_p2 == doctest::Approx(a.mean_p2).epsilon(1e-10));
}

TEST_CASE("1D densities") {
  const ModeParams mode{1.0, 1.0, 1.0};
  for (std::int64_t n : {0, 3, 9}) {
    const double amp = turning_point(n, 1.0, 1.0, 1.0);
    const Axis ax = default_axis_1d(n, mode, 1025);
    const DensityGrid c = density_1d(DensityKind::classical, n, mode, ax);
    CHECK(c.values[512] == doctest::Approx(1.0 / (std::numbers::pi * amp)).epsilon(1e-12));
    CHECK(c.normalization_residual < 1e-12);
  }

  const ModeParams wide{2.0, 0.5, 1.0};
  const DensityGrid g = density_1d(DensityKind::quantum, 0, wide);
  const double x0 = 1.0;
  double var = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.axes[0].node(i);
    var += g.cell_mass[i] * x * x;
    REQUIRE(g.values[i] == doctest::Approx(std::exp(-x * x / (x0 * x0)) / (std::sqrt(std::numbers::pi) * x0))
                               .epsilon(1e-12)
                               .scale(1e-300));
  }
  CHECK(var == doctest::Approx(0.5 * x0 * x0).epsilon(1e-6));

  for (std::int64_t n : {5, 10, 20}) {
    const DensityGrid q = density_1d(DensityKind::quantum, n, mode);
    CHECK(count_local_maxima(q) == static_cast<std::size_t>(n + 1));
    CHECK(q.normalization_residual < 1e-6);
    // The arcsine density peaks only in the cells next to the turning points.
    CHECK(count_local_maxima(density_1d(DensityKind::classical, n, mode)) == 2);
  }
  CHECK_THROWS_AS(density_1d(DensityKind::quantum, 2, mode, std::nullopt, 8), InputError);
}

TEST_CASE("2D densities") {
  const EqualMassSystem sys{1.0, 1.0, 0.5, 1.0, 1.0};
  const QuantumModeState st{3, 3, 1.0};
  const DensityPair d = density_2d(sys, st, 201);
  CHECK(d.quantum.normalization_residual < 1e-6);
  CHECK(d.classical.normalization_residual < 1e-6);

  // Classical support is the rotated rectangle |x_c| < A_nc, |x_r| < A_nr.
  const double ac = turning_point(3, 1.0, sys.omega_c(), 1.0);
  const double ar = turning_point(3, 1.0, sys.omega_r(), 1.0);
  const Axis& ax = d.classical.axes[0];
  for (std::size_t i = 0; i < ax.count; ++i) {
    for (std::size_t j = 0; j < ax.count; ++j) {
      const double x1 = ax.node(i);
      const double x2 = ax.node(j);
      const bool inside = std::abs(x1 + x2) / std::sqrt(2.0) < ac && std::abs(x1 - x2) / std::sqrt(2.0) < ar;
      REQUIRE((d.classical.at(i, j) > 0.0) == inside);
    }
  }

  // The x2 = 0 slice is the product of the two 1D mode functions.
  const HOEigenstate pc(3, 1.0, sys.omega_c(), 1.0);
  const HOEigenstate pr(3, 1.0, sys.omega_r(), 1.0);
  const Axis sym{-4.0, 4.0, 101};
  const DensityPair s = density_2d(sys, st, 101, sym);
  for (std::size_t i = 0; i < sym.count; ++i) {
    const double x1 = sym.node(i);
    const double u = x1 / std::sqrt(2.0);
    REQUIRE(s.quantum.at(i, 50) == doctest::Approx(pc.density(u) * pr.density(u)).epsilon(1e-10).scale(1e-300));
  }

  const UnequalMassSystem same{1.0, 1.0, 1.0, 0.3, 1.0, 1.0};
  const UnequalMassSystem skew{1.0, 4.0, 1.0, 0.3, 1.0, 1.0};
  const DensityPair e = density_2d(same, {2, 2, 1.0}, 101);
  const DensityPair k = density_2d(skew, {2, 2, 1.0}, 101);
  CHECK(k.quantum.normalization_residual < 1e-6);
  CHECK(k.classical.normalization_residual < 1e-6);
  double asym_same = 0.0;
  double asym_skew = 0.0;
  for (std::size_t i = 0; i < 101; ++i) {
    for (std::size_t j = 0; j < 101; ++j) {
      asym_same += std::abs(e.classical.cell_mass[i * 101 + j] - e.classical.cell_mass[j * 101 + i]);
      asym_skew += std::abs(k.classical.cell_mass[i * 101 + j] - k.classical.cell_mass[j * 101 + i]);
    }
  }
  CHECK(asym_same < 1e-12);
  CHECK(asym_skew > 0.1);
}

TEST_CASE("smearing") {
  const ModeParams mode{1.0, 1.0, 1.0};
  const Axis ax = default_axis_1d(0, mode, 513);
  const DensityGrid q = density_1d(DensityKind::quantum, 0, mode, ax);
  const DensityGrid c = density_1d(DensityKind::classical, 0, mode, ax);
  double raw = 0.0;
  const double qt = q.total_mass();
  const double ct = c.total_mass();
  for (std::size_t i = 0; i < q.size(); ++i) raw += std::abs(q.cell_mass[i] / qt - c.cell_mass[i] / ct);
  CHECK(smear_and_compare(q, c, 0.0) == doctest::Approx(raw).epsilon(1e-14));
  CHECK(smear_and_compare(c, c, 0.0) == 0.0);
  CHECK(smear_and_compare(q, q, 0.0) == 0.0);
  CHECK_THROWS_AS(smear_and_compare(q, c, -1.0), InputError);
  const DensityGrid other = density_1d(DensityKind::classical, 0, mode, Axis{-5.0, 5.0, 513});
  CHECK_THROWS_AS(smear_and_compare(q, other, 0.5), InputError);

  // Smearing conserves mass and moves the quantum density toward the classical one.
  const DensityGrid q20 = density_1d(DensityKind::quantum, 20, mode);
  const DensityGrid c20 = density_1d(DensityKind::classical, 20, mode);
  CHECK(smear_and_compare(q20, c20, 1.0) < smear_and_compare(q20, c20, 0.0));

  const auto rows = converge({5, 10, 20}, mode);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].smear_width == 1.0);
  CHECK(rows[1].l1_distance < rows[0].l1_distance);
  CHECK(rows[2].l1_distance < rows[1].l1_distance);

  // Same ordering on the 2D equal-mass densities with n_c = n_r = n.
  const EqualMassSystem sys{1.0, 1.0, 0.0, 1.0, 1.0};
  double prev = 3.0;
  for (std::int64_t n : {5, 10, 20}) {
    const DensityPair d = density_2d(sys, {n, n, 1.0}, 129);
    const double l1 = smear_and_compare(d.quantum, d.classical, 1.0);
    CHECK(l1 < prev);
    prev = l1;
  }
}
