#pragma once

#include "qcu/coupled_ho.hpp"
#include "qcu/grid.hpp"
#include "qcu/moments.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qcu {

/// Physicists' Hermite polynomial H_n(u) by the three-term recurrence.
/// Above degree 30 the recurrence is carried with a running log scale, so
/// intermediate terms never overflow (the final value may still be inf).
double hermite_eval(std::int64_t n, double u);

/// H_n(u) exp(-u^2/2), with the Gaussian folded in through the log scale
/// for n > 30 so that large degrees stay finite wherever the product is.
double hermite_gauss(std::int64_t n, double u);

/// log|H_n(u)| and its sign (sign 0 at a root).
struct LogHermite {
  double log_abs = 0.0;
  int sign = 0;
};
LogHermite log_hermite(std::int64_t n, double u);

/// Harmonic-oscillator eigenfunction with quadrature-fixed normalization.
class HOEigenstate {
public:
  HOEigenstate(std::int64_t n, double mass, double omega, double hbar);

  std::int64_t n() const noexcept { return n_; }
  double x0() const noexcept { return x0_; }
  /// log of the prefactor multiplying H_n(x/x0) exp(-x^2/(2 x0^2)).
  double log_norm() const noexcept { return log_norm_; }

  double operator()(double x) const;
  double density(double x) const;

private:
  std::int64_t n_;
  double x0_;
  double log_norm_;
};

/// Analytic eigenstate moments: <x^2> = (2n+1) hbar/(2 m w), <p^2> = (2n+1) m hbar w / 2.
MomentSet ho_moments(std::int64_t n, double mass, double omega, double hbar);

/// The same moments by Gauss-Hermite quadrature of |phi_n|^2 x^2 and |phi_n'|^2
/// with 4n + 64 nodes.
MomentSet ho_moments_quadrature(std::int64_t n, double mass, double omega, double hbar);

struct ModeParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
};

enum class DensityKind { quantum, classical };

/// Arcsine density 1/(pi sqrt(A^2 - x^2)) inside (-A, A), zero outside.
double arcsine_density(double x, double amplitude);
/// Its cumulative distribution, clamped to [0, 1].
double arcsine_cdf(double x, double amplitude);

/// Symmetric axis wide enough for the quantum tails of level n.
Axis default_axis_1d(std::int64_t n, const ModeParams& mode, std::size_t count = 1025);

/// |phi_n|^2 or the classical arcsine density at the turning point A_n.
/// Classical cell masses use the arcsine CDF between cell edges.
DensityGrid density_1d(DensityKind kind, std::int64_t n, const ModeParams& mode,
                       std::optional<Axis> axis = std::nullopt, std::size_t count = 1025);

struct DensityPair {
  DensityGrid quantum;
  DensityGrid classical;
};

/// Quantum and classical densities over (x1, x2) for the mode eigenstate
/// (n_c, n_r) of a coupled system. Equal masses use the symmetric normal
/// coordinates, unequal masses the mass-weighted Jacobi coordinates.
DensityPair density_2d(const EqualMassSystem& sys, const QuantumModeState& state, std::size_t count = 513,
                       std::optional<Axis> axis = std::nullopt);
DensityPair density_2d(const UnequalMassSystem& sys, const QuantumModeState& state, std::size_t count = 513,
                       std::optional<Axis> axis = std::nullopt);

/// Gaussian-smears the quantum cell masses with standard deviation `width`,
/// renormalizes both grids and returns the L1 distance sum |q_i - c_i| of the
/// cell probabilities (0 for identical grids, at most 2).
/// Throws InputError on mismatched grids or a negative width.
double smear_and_compare(const DensityGrid& quantum, const DensityGrid& classical, double width);

/// Number of strict local maxima of a 1D density (ignoring values below
/// 1e-10 of the peak).
std::size_t count_local_maxima(const DensityGrid& grid);

struct ConvergenceRow {
  std::int64_t n = 0;
  double smear_width = 0.0;
  double l1_distance = 0.0;
};

/// smear_and_compare for each level in `levels`; a non-positive width means
/// the oscillator length x0.
std::vector<ConvergenceRow> converge(const std::vector<std::int64_t>& levels, const ModeParams& mode,
                                     double width = 0.0, std::size_t count = 1025);

}  // namespace qcu
