#pragma once

#include "qcu/classical.hpp"
#include "qcu/moments.hpp"

#include <array>
#include <cstdint>

namespace qcu {

/// Two equal masses m, each tied to a wall by a spring k and to each other by
/// a spring k'. Normal coordinates x_c = (x1 + x2)/sqrt2, x_r = (x1 - x2)/sqrt2.
struct EqualMassSystem {
  double mass = 1.0;
  double k = 1.0;
  double k_coupling = 0.0;
  double amp_c = 1.0;  ///< centre-of-mass amplitude A_c
  double amp_r = 1.0;  ///< relative amplitude A_r

  double omega_c() const;
  double omega_r() const;
};

/// Masses m1, m2 with common outer frequency w and coupling spring k.
/// Jacobi coordinates with M = (m1 + m2)/2 and mu = m1 m2 / M:
/// x_c = (m1 x1 + m2 x2)/(M sqrt2), x_r = (x1 - x2)/sqrt2.
struct UnequalMassSystem {
  double m1 = 1.0;
  double m2 = 1.0;
  double omega = 1.0;
  double k = 0.0;
  double amp_c = 1.0;
  double amp_r = 1.0;

  double total_mass() const;    ///< M = (m1 + m2)/2
  double reduced_mass() const;  ///< mu = m1 m2 / M
  double omega_c() const;
  double omega_r() const;
  /// The same system with the particle labels exchanged.
  UnequalMassSystem swapped() const;
};

struct QuantumModeState {
  std::int64_t n_c = 0;
  std::int64_t n_r = 0;
  double hbar = 1.0;
};

void validate(const EqualMassSystem& sys);
void validate(const UnequalMassSystem& sys);
void validate(const QuantumModeState& state);

/// Linear map (x1, x2) -> (x_c, x_r) as a row-major 2x2 matrix.
using ModeTransform = std::array<double, 4>;

struct NormalModes {
  double omega_c = 0.0;
  double omega_r = 0.0;
  ModeTransform transform{};
};

NormalModes normal_modes_equal(const EqualMassSystem& sys);
/// Applies a 2x2 transform to a coordinate pair.
std::array<double, 2> apply(const ModeTransform& t, std::array<double, 2> v);

/// Classical ensemble product for the equal-mass system, both particles
/// scaled by A_r and m A_r w_r. Throws ScalingError when A_r = 0.
UncertaintyProduct classical_product_equal(const EqualMassSystem& sys);

/// Quantum product for the mode eigenstate (n_c, n_r), built from the mode
/// expectation values and scaled by A_{n_r} and m A_{n_r} w_r.
UncertaintyProduct quantum_product_equal(const EqualMassSystem& sys, const QuantumModeState& state);

/// Classical turning point of the n-th oscillator level:
/// sqrt(2 E_n / (m w^2)) with E_n = (n + 1/2) hbar w.
double turning_point(std::int64_t n, double mass, double omega, double hbar);

/// Classical ensemble product for unequal masses, both particles scaled by
/// A_c and M w_c A_c. Throws ScalingError when A_c = 0.
UncertaintyProduct classical_product_unequal(const UnequalMassSystem& sys);

/// Quantum product for unequal masses, scaled by A_{n_c} (built from M) and
/// M w_c A_{n_c}; A_{n_r} is built from mu.
UncertaintyProduct quantum_product_unequal(const UnequalMassSystem& sys, const QuantumModeState& state);

/// The system with its amplitudes replaced by the turning points of the
/// quantum levels (A_{n_c}, A_{n_r}).
EqualMassSystem with_turning_points(EqualMassSystem sys, const QuantumModeState& state);
UnequalMassSystem with_turning_points(UnequalMassSystem sys, const QuantumModeState& state);

/// Exact trajectory of particle 1 when both modes oscillate from rest at
/// their amplitudes. Periodic only for commensurate frequencies; `period`
/// must be a common period supplied by the caller.
Trajectory particle1_trajectory(const EqualMassSystem& sys, double period);
Trajectory particle1_trajectory(const UnequalMassSystem& sys, double period);

}  // namespace qcu
