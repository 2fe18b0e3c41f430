#pragma once

#include <string>

namespace qcu {

enum class MomentMethod { analytic, quadrature, monte_carlo };

std::string to_string(MomentMethod m);
MomentMethod parse_moment_method(const std::string& text);

/// Standard errors of the four moments; zero for closed forms.
struct MomentErrors {
  double mean_x = 0.0;
  double mean_x2 = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;
};

/// First and second moments of one coordinate and its conjugate momentum.
/// Positions in L, momenta in M L T^-1.
struct MomentSet {
  double mean_x = 0.0;
  double mean_x2 = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;
  MomentMethod method = MomentMethod::analytic;
  MomentErrors error;

  double delta_x() const;
  double delta_p() const;
};

/// Length and momentum scales used to make Dx and Dp dimensionless.
struct ScaledPair {
  double x_scale = 1.0;
  double p_scale = 1.0;
};

/// Throws ScalingError unless both scales are finite and strictly positive.
ScaledPair make_scaled_pair(double x_scale, double p_scale);

struct ParticleUncertainty {
  double dx = 0.0;     ///< dimensionless position spread
  double dp = 0.0;     ///< dimensionless momentum spread
  double value = 0.0;  ///< dx * dp
};

/// Dimensionless uncertainty products of the two particles of a coupled system.
struct UncertaintyProduct {
  ParticleUncertainty particle1;
  ParticleUncertainty particle2;
  ScaledPair scales;
};

ParticleUncertainty make_particle(double dx, double dp);

/// Dx * Dp / (x_scale * p_scale) for a moment set.
ParticleUncertainty scaled_uncertainty(const MomentSet& m, const ScaledPair& s);

}  // namespace qcu
