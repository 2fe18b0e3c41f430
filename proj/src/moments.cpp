#include "qcu/moments.hpp"

#include "qcu/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qcu {

std::string to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::analytic: return "analytic";
    case MomentMethod::quadrature: return "quadrature";
    case MomentMethod::monte_carlo: return "mc";
  }
  return "?";
}

MomentMethod parse_moment_method(const std::string& text) {
  if (text == "analytic") return MomentMethod::analytic;
  if (text == "quadrature") return MomentMethod::quadrature;
  if (text == "mc" || text == "monte_carlo") return MomentMethod::monte_carlo;
  throw InputError("unknown moment method '" + text + "'", "method");
}

// Variances are clamped at zero: rounding can push <x^2> - <x>^2 slightly negative.
double MomentSet::delta_x() const { return std::sqrt(std::max(0.0, mean_x2 - mean_x * mean_x)); }
double MomentSet::delta_p() const { return std::sqrt(std::max(0.0, mean_p2 - mean_p * mean_p)); }

ScaledPair make_scaled_pair(double x_scale, double p_scale) {
  if (!(x_scale > 0.0) || !std::isfinite(x_scale)) throw ScalingError("position scale must be positive");
  if (!(p_scale > 0.0) || !std::isfinite(p_scale)) throw ScalingError("momentum scale must be positive");
  return {x_scale, p_scale};
}

ParticleUncertainty make_particle(double dx, double dp) { return {dx, dp, dx * dp}; }

ParticleUncertainty scaled_uncertainty(const MomentSet& m, const ScaledPair& s) {
  return make_particle(m.delta_x() / s.x_scale, m.delta_p() / s.p_scale);
}

}  // namespace qcu
