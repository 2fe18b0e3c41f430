#pragma once

#include "qcu/moments.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace qcu {

/// Two particles in a box of length L with contact interaction
/// lambda delta(x1 - x2). Jacobi coordinates x_c = (m1 x1 + m2 x2)/M,
/// x_r = x1 - x2 with M = m1 + m2 and mu = m1 m2 / M.
struct DeltaBoxSystem {
  double m1 = 1.0;
  double m2 = 1.0;
  double length = 1.0;
  double lambda = 0.0;  ///< M L^2 T^-2 (delta strength times a length)
  double hbar = 1.0;

  double total_mass() const;
  double reduced_mass() const;
  /// mu lambda / hbar^2, an inverse length.
  double coupling() const;
  DeltaBoxSystem swapped() const;
};

void validate(const DeltaBoxSystem& sys);

struct RelativeModeRoot {
  std::int64_t index = 0;
  double k = 0.0;
  /// |kL cot(kL) + cL|, the quantization condition in units of 1/L.
  double residual = 0.0;
};

struct EnergyPair {
  double e_c = 0.0;
  double e_r = 0.0;
};

/// Position and momentum moments of both particles.
struct ParticleMoments {
  MomentSet particle1;
  MomentSet particle2;
};

/// Ensemble moments with the contact point treated as a solid wall:
/// <x_c> = L/2, <x_c^2> = L^2/3, <x_r^2> = L^2/3, <p_c^2> = 2 M E_c, <p_r^2> = 2 mu E_r.
ParticleMoments classical_box_moments(const DeltaBoxSystem& sys, const EnergyPair& energies);

/// Classical products, scaled by L and sqrt(2 mu E_r). Independent of lambda.
UncertaintyProduct classical_box_products(const DeltaBoxSystem& sys, const EnergyPair& energies);

/// |kL cot(kL) + cL| for wavenumber k, box length L and coupling c = mu lambda / hbar^2.
double quantization_residual(double k, double length, double coupling);

/// The index-th positive solution (index >= 1) of k cot(kL) = -c for c >= 0,
/// found by bisection on ((index - 1/2) pi, index pi) / L.
RelativeModeRoot solve_wavenumber(double length, double coupling, std::int64_t index);

/// The first `count` roots, increasing.
std::vector<RelativeModeRoot> solve_wavenumbers(double length, double coupling, std::size_t count);
/// Throws UnsupportedError for lambda < 0.
std::vector<RelativeModeRoot> solve_wavenumbers(const DeltaBoxSystem& sys, std::size_t count);

/// Amplitude ratio A/B of the relative wavefunction for a delta at x_r = pL.
double continuity_ratio(double k, double length, double position);

/// <x_r^2> = 2kL^3 / (6kL - 3 sin 2kL) - 1/(2k^2) for the even relative state.
/// Throws DomainError unless k > 0 and L > 0.
double xr2_expectation(double k, double length);

/// <x_c^2> = L^2 (1/3 - 1/(2 n^2 pi^2)) for box level n >= 1.
double xc2_expectation(std::int64_t n_c, double length);

/// E_c = (pi hbar n_c / L)^2 / (2M) and E_r = hbar^2 k^2 / (2 mu).
EnergyPair quantum_energies(const DeltaBoxSystem& sys, std::int64_t n_c, double k);

/// Quantum moments of both particles for box level n_c of the centre of mass
/// and the even relative state with wavenumber root.k.
ParticleMoments quantum_box_moments(const DeltaBoxSystem& sys, std::int64_t n_c, const RelativeModeRoot& root);

/// Quantum products for centre-of-mass level n_c and relative root `root`.
UncertaintyProduct quantum_box_products(const DeltaBoxSystem& sys, std::int64_t n_c, const RelativeModeRoot& root);

struct LimitRow {
  std::int64_t n_c = 0;
  std::int64_t root_index = 0;
  double k = 0.0;
  double energy_ratio = 0.0;  ///< M E_c / (mu E_r)
  UncertaintyProduct quantum;
  UncertaintyProduct classical;
  double gap = 0.0;  ///< largest |quantum - classical| over the two particles
};

struct LimitCheck {
  std::vector<LimitRow> rows;
  /// Strict decrease of the gap from the fourth row on.
  bool monotone_after_third = false;
  double final_gap = 0.0;
  /// Last row has n_c >= 1000 and kL >= 1000.
  bool final_in_classical_regime = false;
  bool converged() const { return monotone_after_third && final_in_classical_regime && final_gap <= 1e-3; }
};

/// Compares quantum and classical products along an increasing sequence of
/// (n_c, root index). Classical energies are the quantum ones at each step.
LimitCheck classical_limit_check(const DeltaBoxSystem& sys,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& sequence);

}  // namespace qcu
