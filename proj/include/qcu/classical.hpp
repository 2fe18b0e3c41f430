#pragma once

#include "qcu/grid.hpp"
#include "qcu/moments.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace qcu {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Exact periodic motion x(t), p(t) over one period.
struct Trajectory {
  double period = 0.0;
  std::function<PhasePoint(double)> at;
  /// Times in (0, period) where the motion is not smooth (wall bounces).
  std::vector<double> breakpoints;
};

enum class PotentialShape { harmonic, flat, generic };

/// A classical bound state of one particle in a 1D potential.
///
/// Units: mass M, energy M L^2 T^-2, turning points L, period T.
struct BoundState1D {
  double mass = 1.0;
  double energy = 1.0;
  std::function<double(double)> potential;
  double x_min = 0.0;
  double x_max = 1.0;
  PotentialShape shape = PotentialShape::generic;
  std::optional<Trajectory> trajectory;

  std::optional<double> period() const;
};

/// V = m w^2 x^2 / 2 with amplitude A; E = m w^2 A^2 / 2.
BoundState1D harmonic_state(double mass, double omega, double amplitude);
/// Free particle between solid walls at 0 and L with kinetic energy E.
BoundState1D box_state(double mass, double length, double energy);
/// Any potential with turning points x_min < x_max; no trajectory attached.
BoundState1D generic_state(double mass, double energy, std::function<double(double)> potential,
                           double x_min, double x_max);

/// Throws DomainError if the state's invariants do not hold.
void validate(const BoundState1D& state);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Normalization of rho = N / sqrt(2 m (E - V)) found by explicit integration,
/// alongside 2m/tau when the period is known.
struct Normalization {
  double numeric = 0.0;
  std::optional<double> from_period;
};

Normalization density_normalization(const BoundState1D& state);

/// Cell-centred axis spanning exactly the classically allowed region.
Axis support_axis(const BoundState1D& state, std::size_t count);

/// Classical position density on `grid`. Every node must lie strictly inside
/// (x_min, x_max). Cell masses are integrated with an endpoint-regular
/// substitution and clipped to the support.
DensityGrid classical_density(const BoundState1D& state, const Axis& grid);

/// One-period average of observable(x, p) along the exact trajectory.
/// Composite Simpson on each smooth piece; the error is the difference to
/// the half-resolution result.
Estimate time_average(const Trajectory& trajectory, const std::function<double(double, double)>& observable,
                      std::size_t samples);
Estimate time_average(const BoundState1D& state, const std::function<double(double, double)>& observable,
                      std::size_t samples);

struct ReferenceProducts {
  double harmonic = 0.0;
  double box = 0.0;
};

/// Dimensionless single-particle products: 1/2 and 1/sqrt(12).
ReferenceProducts reference_products();

/// Closed-form ensemble moments for harmonic and box states.
MomentSet analytic_moments(const BoundState1D& state);
/// Moments from time averages along the trajectory.
MomentSet quadrature_moments(const BoundState1D& state, std::size_t samples = 4096);

/// Phase points at uniformly random times; same partitioning as mc_moments.
std::vector<PhasePoint> sample_ensemble(const BoundState1D& state, std::size_t n_samples, std::uint64_t seed);

/// Monte Carlo moments of the random-phase ensemble. Samples are split over
/// a fixed number of partitions with seeds derived from `seed`, so the result
/// depends only on (state, n_samples, seed).
MomentSet mc_moments(const BoundState1D& state, std::size_t n_samples, std::uint64_t seed);

/// Natural scales of a single-particle state: (A, m w A) or (L, sqrt(2 m E)).
ScaledPair natural_scales(const BoundState1D& state);

}  // namespace qcu
