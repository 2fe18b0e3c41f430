#include "qcu/coupled_ho.hpp"

#include "qcu/errors.hpp"
#include "qcu/quantum1d.hpp"

#include <cmath>
#include <numbers>

namespace qcu {

namespace {

void positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(field) + " must be positive", field);
}

void non_negative(double v, const char* field) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw InputError(std::string(field) + " must be non-negative", field);
}

void check_amplitudes(double amp_c, double amp_r) {
  non_negative(amp_c, "amp_c");
  non_negative(amp_r, "amp_r");
  if (amp_c == 0.0 && amp_r == 0.0) throw InputError("amplitudes cannot both vanish", "amp_c");
}

}  // namespace

double EqualMassSystem::omega_c() const { return std::sqrt(k / mass); }
double EqualMassSystem::omega_r() const { return std::sqrt((k + 2.0 * k_coupling) / mass); }

double UnequalMassSystem::total_mass() const { return 0.5 * (m1 + m2); }
double UnequalMassSystem::reduced_mass() const { return m1 * m2 / total_mass(); }
double UnequalMassSystem::omega_c() const { return omega; }
double UnequalMassSystem::omega_r() const { return std::sqrt(omega * omega + 2.0 * k / reduced_mass()); }

UnequalMassSystem UnequalMassSystem::swapped() const {
  UnequalMassSystem s = *this;
  std::swap(s.m1, s.m2);
  return s;
}

void validate(const EqualMassSystem& sys) {
  positive(sys.mass, "mass");
  positive(sys.k, "k");
  non_negative(sys.k_coupling, "k_coupling");
  check_amplitudes(sys.amp_c, sys.amp_r);
}

void validate(const UnequalMassSystem& sys) {
  positive(sys.m1, "m1");
  positive(sys.m2, "m2");
  positive(sys.omega, "omega");
  non_negative(sys.k, "k");
  check_amplitudes(sys.amp_c, sys.amp_r);
}

void validate(const QuantumModeState& state) {
  if (state.n_c < 0) throw InputError("n_c must be non-negative", "nc");
  if (state.n_r < 0) throw InputError("n_r must be non-negative", "nr");
  positive(state.hbar, "hbar");
}

NormalModes normal_modes_equal(const EqualMassSystem& sys) {
  validate(sys);
  const double s = 1.0 / std::numbers::sqrt2;
  return {sys.omega_c(), sys.omega_r(), {s, s, s, -s}};
}

std::array<double, 2> apply(const ModeTransform& t, std::array<double, 2> v) {
  return {t[0] * v[0] + t[1] * v[1], t[2] * v[0] + t[3] * v[1]};
}

double turning_point(std::int64_t n, double mass, double omega, double hbar) {
  if (n < 0) throw InputError("quantum number must be non-negative", "n");
  positive(mass, "mass");
  positive(omega, "omega");
  positive(hbar, "hbar");
  const double energy = (static_cast<double>(n) + 0.5) * hbar * omega;
  return std::sqrt(2.0 * energy / (mass * omega * omega));
}

UncertaintyProduct classical_product_equal(const EqualMassSystem& sys) {
  validate(sys);
  if (sys.amp_r == 0.0) throw ScalingError("A_r = 0: the relative-mode scales vanish");
  const double wc = sys.omega_c();
  const double wr = sys.omega_r();
  const double ac = sys.amp_c;
  const double ar = sys.amp_r;
  // <x1^2> = (A_c^2 + A_r^2)/4, <p1^2> = m^2 (A_c^2 w_c^2 + A_r^2 w_r^2)/4.
  const double dx = 0.5 * std::sqrt(ac * ac + ar * ar);
  const double dp = 0.5 * sys.mass * std::sqrt(ac * ac * wc * wc + ar * ar * wr * wr);
  const ScaledPair scales = make_scaled_pair(ar, sys.mass * ar * wr);
  const ParticleUncertainty p = make_particle(dx / scales.x_scale, dp / scales.p_scale);
  return {p, p, scales};
}

UncertaintyProduct quantum_product_equal(const EqualMassSystem& sys, const QuantumModeState& state) {
  validate(sys);
  validate(state);
  const double wc = sys.omega_c();
  const double wr = sys.omega_r();
  const MomentSet c = ho_moments(state.n_c, sys.mass, wc, state.hbar);
  const MomentSet r = ho_moments(state.n_r, sys.mass, wr, state.hbar);
  // x1 = (x_c + x_r)/sqrt2 with independent, zero-mean modes.
  const double dx = std::sqrt(0.5 * (c.mean_x2 + r.mean_x2));
  const double dp = std::sqrt(0.5 * (c.mean_p2 + r.mean_p2));
  const double a_nr = turning_point(state.n_r, sys.mass, wr, state.hbar);
  const ScaledPair scales = make_scaled_pair(a_nr, sys.mass * a_nr * wr);
  const ParticleUncertainty p = make_particle(dx / scales.x_scale, dp / scales.p_scale);
  return {p, p, scales};
}

namespace {

// Particle 1 of the unequal-mass system; particle 2 is the same expression
// with m1 and m2 exchanged.
ParticleUncertainty unequal_particle(double m_self, double m_other, double big_m, double mu, double wc, double wr,
                                     double ac2, double ar2, const ScaledPair& scales) {
  const double other = m_other / big_m;
  const double self = m_self / big_m;
  // <x1^2> = [A_c^2 + (m2/M)^2 A_r^2]/4
  // <p1^2> = [mu^2 w_r^2 A_r^2 + (m1/M)^2 M^2 w_c^2 A_c^2]/4
  const double dx = 0.5 * std::sqrt(ac2 + other * other * ar2);
  const double dp = 0.5 * std::sqrt(mu * mu * wr * wr * ar2 + self * self * big_m * big_m * wc * wc * ac2);
  return make_particle(dx / scales.x_scale, dp / scales.p_scale);
}

}  // namespace

UncertaintyProduct classical_product_unequal(const UnequalMassSystem& sys) {
  validate(sys);
  if (sys.amp_c == 0.0) throw ScalingError("A_c = 0: the centre-of-mass scales vanish");
  const double big_m = sys.total_mass();
  const double mu = sys.reduced_mass();
  const double wc = sys.omega_c();
  const double wr = sys.omega_r();
  const double ac2 = sys.amp_c * sys.amp_c;
  const double ar2 = sys.amp_r * sys.amp_r;
  const ScaledPair scales = make_scaled_pair(sys.amp_c, big_m * wc * sys.amp_c);
  return {unequal_particle(sys.m1, sys.m2, big_m, mu, wc, wr, ac2, ar2, scales),
          unequal_particle(sys.m2, sys.m1, big_m, mu, wc, wr, ac2, ar2, scales), scales};
}

UncertaintyProduct quantum_product_unequal(const UnequalMassSystem& sys, const QuantumModeState& state) {
  validate(sys);
  validate(state);
  const double big_m = sys.total_mass();
  const double mu = sys.reduced_mass();
  const double wc = sys.omega_c();
  const double wr = sys.omega_r();
  const MomentSet c = ho_moments(state.n_c, big_m, wc, state.hbar);
  const MomentSet r = ho_moments(state.n_r, mu, wr, state.hbar);
  const double a_nc = turning_point(state.n_c, big_m, wc, state.hbar);
  const ScaledPair scales = make_scaled_pair(a_nc, big_m * wc * a_nc);

  // x1 = (x_c + (m2/M) x_r)/sqrt2, p1 = ((m1/M) p_c + p_r)/sqrt2.
  auto particle = [&](double m_self, double m_other) {
    const double self = m_self / big_m;
    const double other = m_other / big_m;
    const double dx = std::sqrt(0.5 * (c.mean_x2 + other * other * r.mean_x2));
    const double dp = std::sqrt(0.5 * (self * self * c.mean_p2 + r.mean_p2));
    return make_particle(dx / scales.x_scale, dp / scales.p_scale);
  };
  return {particle(sys.m1, sys.m2), particle(sys.m2, sys.m1), scales};
}

EqualMassSystem with_turning_points(EqualMassSystem sys, const QuantumModeState& state) {
  validate(state);
  sys.amp_c = turning_point(state.n_c, sys.mass, sys.omega_c(), state.hbar);
  sys.amp_r = turning_point(state.n_r, sys.mass, sys.omega_r(), state.hbar);
  return sys;
}

UnequalMassSystem with_turning_points(UnequalMassSystem sys, const QuantumModeState& state) {
  validate(state);
  sys.amp_c = turning_point(state.n_c, sys.total_mass(), sys.omega_c(), state.hbar);
  sys.amp_r = turning_point(state.n_r, sys.reduced_mass(), sys.omega_r(), state.hbar);
  return sys;
}

Trajectory particle1_trajectory(const EqualMassSystem& sys, double period) {
  validate(sys);
  const double wc = sys.omega_c();
  const double wr = sys.omega_r();
  const double s = 1.0 / std::numbers::sqrt2;
  Trajectory t;
  t.period = period;
  t.at = [=, m = sys.mass, ac = sys.amp_c, ar = sys.amp_r](double time) {
    const double x = s * (ac * std::cos(wc * time) + ar * std::cos(wr * time));
    const double v = -s * (ac * wc * std::sin(wc * time) + ar * wr * std::sin(wr * time));
    return PhasePoint{x, m * v};
  };
  return t;
}

Trajectory particle1_trajectory(const UnequalMassSystem& sys, double period) {
  validate(sys);
  const double wc = sys.omega_c();
  const double wr = sys.omega_r();
  const double ratio = sys.m2 / sys.total_mass();
  const double s = 1.0 / std::numbers::sqrt2;
  Trajectory t;
  t.period = period;
  t.at = [=, m = sys.m1, ac = sys.amp_c, ar = sys.amp_r](double time) {
    const double x = s * (ac * std::cos(wc * time) + ratio * ar * std::cos(wr * time));
    const double v = -s * (ac * wc * std::sin(wc * time) + ratio * ar * wr * std::sin(wr * time));
    return PhasePoint{x, m * v};
  };
  return t;
}

}  // namespace qcu
