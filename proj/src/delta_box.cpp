#include "qcu/delta_box.hpp"

#include "qcu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qcu {

double DeltaBoxSystem::total_mass() const { return m1 + m2; }
double DeltaBoxSystem::reduced_mass() const { return m1 * m2 / total_mass(); }
double DeltaBoxSystem::coupling() const { return reduced_mass() * lambda / (hbar * hbar); }

DeltaBoxSystem DeltaBoxSystem::swapped() const {
  DeltaBoxSystem s = *this;
  std::swap(s.m1, s.m2);
  return s;
}

void validate(const DeltaBoxSystem& sys) {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(field) + " must be positive", field);
  };
  positive(sys.m1, "m1");
  positive(sys.m2, "m2");
  positive(sys.length, "L");
  positive(sys.hbar, "hbar");
  if (!std::isfinite(sys.lambda)) throw InputError("lambda must be finite", "lambda");
  if (sys.lambda < 0.0) throw UnsupportedError("attractive contact interactions (lambda < 0) are not modelled");
}

namespace {

void check_energies(const EnergyPair& e) {
  if (!(e.e_c > 0.0)) throw InputError("E_c must be positive", "Ec");
  if (!(e.e_r > 0.0)) throw InputError("E_r must be positive", "Er");
}

// kL cot(kL) + cL in the variable kappa = kL.
double condition(double kappa, double cl) { return kappa / std::tan(kappa) + cl; }

}  // namespace

ParticleMoments classical_box_moments(const DeltaBoxSystem& sys, const EnergyPair& e) {
  validate(sys);
  check_energies(e);
  const double len = sys.length;
  const double big_m = sys.total_mass();
  const double mu = sys.reduced_mass();
  const double xc = len / 2.0;
  const double xc2 = len * len / 3.0;
  const double xr2 = len * len / 3.0;
  const double pc2 = 2.0 * big_m * e.e_c;
  const double pr2 = 2.0 * mu * e.e_r;
  // x1 = x_c + (m2/M) x_r, p1 = (m1/M) p_c + p_r; modes independent, <x_r> = <p> = 0.
  auto particle = [&](double m_self, double m_other) {
    MomentSet m;
    m.method = MomentMethod::analytic;
    const double self = m_self / big_m;
    const double other = m_other / big_m;
    m.mean_x = xc;
    m.mean_x2 = xc2 + other * other * xr2;
    m.mean_p2 = self * self * pc2 + pr2;
    return m;
  };
  return {particle(sys.m1, sys.m2), particle(sys.m2, sys.m1)};
}

UncertaintyProduct classical_box_products(const DeltaBoxSystem& sys, const EnergyPair& e) {
  validate(sys);
  check_energies(e);
  const double big_m = sys.total_mass();
  const double mu = sys.reduced_mass();
  const double ratio = big_m * e.e_c / (mu * e.e_r);
  const ScaledPair scales = make_scaled_pair(sys.length, std::sqrt(2.0 * mu * e.e_r));
  auto particle = [&](double m_self, double m_other) {
    const double self = m_self / big_m;
    const double other = 2.0 * m_other / big_m;
    return make_particle(std::sqrt(1.0 / 12.0) * std::sqrt(1.0 + other * other),
                         std::sqrt(1.0 + self * self * ratio));
  };
  return {particle(sys.m1, sys.m2), particle(sys.m2, sys.m1), scales};
}

double quantization_residual(double k, double length, double coupling) {
  return std::abs(condition(k * length, coupling * length));
}

RelativeModeRoot solve_wavenumber(double length, double coupling, std::int64_t index) {
  if (index < 1) throw InputError("root index must be at least 1", "root-index");
  if (!(length > 0.0)) throw InputError("box length must be positive", "L");
  if (coupling < 0.0) throw UnsupportedError("negative coupling changes the root brackets");
  if (!std::isfinite(coupling)) throw InputError("coupling must be finite", "c");

  const double cl = coupling * length;
  const double pi = std::numbers::pi;
  const double j = static_cast<double>(index);
  const double left = (j - 0.5) * pi;
  const double right = j * pi;
  const double margin = std::max(1e-12 * pi, 4.0 * (std::nextafter(right, 2 * right) - right));

  // On ((j - 1/2) pi, j pi) cot runs from 0 to -inf, so the condition falls
  // monotonically from cL >= 0 to -inf.
  double lo = left + margin;
  double hi = right - margin;
  for (double step = margin; condition(lo, cl) < 0.0; step *= 2.0) {
    lo = left + margin - step;
    if (lo <= (j - 1.0) * pi) throw DomainError("failed to bracket quantization root");
  }
  for (double step = margin; condition(hi, cl) > 0.0; step /= 2.0) {
    hi = right - step;
    if (step < std::numeric_limits<double>::denorm_min()) throw DomainError("failed to bracket quantization root");
  }

  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (condition(mid, cl) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double kappa = std::abs(condition(lo, cl)) <= std::abs(condition(hi, cl)) ? lo : hi;
  RelativeModeRoot root;
  root.index = index;
  root.k = kappa / length;
  root.residual = std::abs(condition(kappa, cl));
  return root;
}

std::vector<RelativeModeRoot> solve_wavenumbers(double length, double coupling, std::size_t count) {
  if (count < 1) throw InputError("root count must be at least 1", "count");
  std::vector<RelativeModeRoot> roots;
  roots.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) roots.push_back(solve_wavenumber(length, coupling, static_cast<std::int64_t>(j)));
  return roots;
}

std::vector<RelativeModeRoot> solve_wavenumbers(const DeltaBoxSystem& sys, std::size_t count) {
  validate(sys);
  return solve_wavenumbers(sys.length, sys.coupling(), count);
}

double continuity_ratio(double k, double length, double position) {
  if (!(position > -1.0 && position < 1.0)) throw InputError("delta position must lie in (-1, 1)", "p");
  return std::sin(k * length * (position - 1.0)) / std::sin(k * length * (position + 1.0));
}

double xr2_expectation(double k, double length) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive");
  if (!(length > 0.0)) throw DomainError("box length must be positive");
  const double kl = k * length;
  return 2.0 * kl * length * length / (6.0 * kl - 3.0 * std::sin(2.0 * kl)) - 1.0 / (2.0 * k * k);
}

double xc2_expectation(std::int64_t n_c, double length) {
  if (n_c < 1) throw InputError("centre-of-mass level must be at least 1", "nc");
  const double n = static_cast<double>(n_c);
  return length * length * (1.0 / 3.0 - 1.0 / (2.0 * n * n * std::numbers::pi * std::numbers::pi));
}

EnergyPair quantum_energies(const DeltaBoxSystem& sys, std::int64_t n_c, double k) {
  validate(sys);
  if (n_c < 1) throw InputError("centre-of-mass level must be at least 1", "nc");
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  const double pc = std::numbers::pi * sys.hbar * static_cast<double>(n_c) / sys.length;
  return {pc * pc / (2.0 * sys.total_mass()), sys.hbar * sys.hbar * k * k / (2.0 * sys.reduced_mass())};
}

ParticleMoments quantum_box_moments(const DeltaBoxSystem& sys, std::int64_t n_c, const RelativeModeRoot& root) {
  validate(sys);
  const EnergyPair e = quantum_energies(sys, n_c, root.k);
  const double big_m = sys.total_mass();
  const double xc2 = xc2_expectation(n_c, sys.length);
  const double xr2 = xr2_expectation(root.k, sys.length);
  const double pc2 = 2.0 * big_m * e.e_c;
  const double pr2 = 2.0 * sys.reduced_mass() * e.e_r;
  // Real stationary states: <p_c> = <p_r> = 0; the relative state is even, so <x_r> = 0.
  auto particle = [&](double m_self, double m_other) {
    MomentSet m;
    m.method = MomentMethod::analytic;
    const double self = m_self / big_m;
    const double other = m_other / big_m;
    m.mean_x = sys.length / 2.0;
    m.mean_x2 = xc2 + other * other * xr2;
    m.mean_p = 0.0;
    m.mean_p2 = self * self * pc2 + pr2;
    return m;
  };
  return {particle(sys.m1, sys.m2), particle(sys.m2, sys.m1)};
}

UncertaintyProduct quantum_box_products(const DeltaBoxSystem& sys, std::int64_t n_c, const RelativeModeRoot& root) {
  validate(sys);
  const EnergyPair e = quantum_energies(sys, n_c, root.k);
  const double big_m = sys.total_mass();
  const double mu = sys.reduced_mass();
  const double len = sys.length;
  const double n = static_cast<double>(n_c);
  const double xr2 = xr2_expectation(root.k, len) / (len * len);
  const double base = 1.0 / 12.0 - 1.0 / (2.0 * n * n * std::numbers::pi * std::numbers::pi);
  const double ratio = big_m * e.e_c / (mu * e.e_r);
  const ScaledPair scales = make_scaled_pair(len, std::sqrt(2.0 * mu * e.e_r));
  auto particle = [&](double m_self, double m_other) {
    const double self = m_self / big_m;
    const double other = m_other / big_m;
    return make_particle(std::sqrt(base + other * other * xr2), std::sqrt(1.0 + self * self * ratio));
  };
  return {particle(sys.m1, sys.m2), particle(sys.m2, sys.m1), scales};
}

LimitCheck classical_limit_check(const DeltaBoxSystem& sys,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& sequence) {
  validate(sys);
  if (sequence.empty()) throw InputError("limit sequence is empty", "sequence");
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    const auto& [n0, j0] = sequence[i - 1];
    const auto& [n1, j1] = sequence[i];
    if (n1 < n0 || j1 < j0 || (n1 == n0 && j1 == j0)) throw InputError("limit sequence must increase", "sequence");
  }

  LimitCheck check;
  const double c = sys.coupling();
  for (const auto& [n_c, index] : sequence) {
    LimitRow row;
    row.n_c = n_c;
    row.root_index = index;
    const RelativeModeRoot root = solve_wavenumber(sys.length, c, index);
    row.k = root.k;
    const EnergyPair e = quantum_energies(sys, n_c, root.k);
    row.energy_ratio = sys.total_mass() * e.e_c / (sys.reduced_mass() * e.e_r);
    row.quantum = quantum_box_products(sys, n_c, root);
    row.classical = classical_box_products(sys, e);
    row.gap = std::max(std::abs(row.quantum.particle1.value - row.classical.particle1.value),
                       std::abs(row.quantum.particle2.value - row.classical.particle2.value));
    check.rows.push_back(row);
  }

  check.monotone_after_third = true;
  for (std::size_t i = 3; i < check.rows.size(); ++i) {
    if (!(check.rows[i].gap < check.rows[i - 1].gap)) check.monotone_after_third = false;
  }
  const LimitRow& last = check.rows.back();
  check.final_gap = last.gap;
  check.final_in_classical_regime = last.n_c >= 1000 && last.k * sys.length >= 1000.0;
  return check;
}

}  // namespace qcu
