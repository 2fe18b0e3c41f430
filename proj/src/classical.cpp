#include "qcu/classical.hpp"

#include "qcu/errors.hpp"
#include "qcu/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

namespace qcu {

namespace {

constexpr std::size_t kPartitions = 8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Platform-independent uniform double in [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

double kinetic_root(const BoundState1D& s, double x) {
  const double ke = s.energy - s.potential(x);
  if (ke < 0.0) throw DomainError("energy below the potential at x = " + std::to_string(x));
  return std::sqrt(2.0 * s.mass * ke);
}

const Trajectory& require_trajectory(const BoundState1D& s) {
  if (!s.trajectory) throw UnsupportedError("state has no periodic trajectory attached");
  return *s.trajectory;
}

}  // namespace

std::optional<double> BoundState1D::period() const {
  if (trajectory) return trajectory->period;
  return std::nullopt;
}

BoundState1D harmonic_state(double mass, double omega, double amplitude) {
  require_positive(mass, "mass");
  require_positive(omega, "omega");
  require_positive(amplitude, "amplitude");
  BoundState1D s;
  s.mass = mass;
  s.energy = 0.5 * mass * omega * omega * amplitude * amplitude;
  s.potential = [mass, omega](double x) { return 0.5 * mass * omega * omega * x * x; };
  s.x_min = -amplitude;
  s.x_max = amplitude;
  s.shape = PotentialShape::harmonic;
  Trajectory t;
  t.period = 2.0 * std::numbers::pi / omega;
  t.at = [=](double time) {
    return PhasePoint{amplitude * std::cos(omega * time), -mass * omega * amplitude * std::sin(omega * time)};
  };
  s.trajectory = std::move(t);
  return s;
}

BoundState1D box_state(double mass, double length, double energy) {
  require_positive(mass, "mass");
  require_positive(length, "length");
  require_positive(energy, "energy");
  BoundState1D s;
  s.mass = mass;
  s.energy = energy;
  s.potential = [](double) { return 0.0; };
  s.x_min = 0.0;
  s.x_max = length;
  s.shape = PotentialShape::flat;
  const double speed = std::sqrt(2.0 * energy / mass);
  const double half = length / speed;
  Trajectory t;
  t.period = 2.0 * half;
  // Instantaneous elastic bounces: |p| is constant, the sign flips at the walls.
  t.at = [=](double time) {
    const double phase = std::fmod(time, 2.0 * half);
    if (phase < half) return PhasePoint{speed * phase, mass * speed};
    return PhasePoint{length - speed * (phase - half), -mass * speed};
  };
  t.breakpoints = {half};
  s.trajectory = std::move(t);
  return s;
}

BoundState1D generic_state(double mass, double energy, std::function<double(double)> potential, double x_min,
                           double x_max) {
  require_positive(mass, "mass");
  if (!(x_max > x_min)) throw DomainError("turning points must satisfy x_min < x_max");
  BoundState1D s;
  s.mass = mass;
  s.energy = energy;
  s.potential = std::move(potential);
  s.x_min = x_min;
  s.x_max = x_max;
  s.shape = PotentialShape::generic;
  validate(s);
  return s;
}

void validate(const BoundState1D& s) {
  require_positive(s.mass, "mass");
  if (!s.potential) throw DomainError("state has no potential");
  if (!(s.x_max > s.x_min)) throw DomainError("turning points must satisfy x_min < x_max");
  constexpr int kProbes = 257;
  for (int i = 1; i < kProbes; ++i) {
    const double x = s.x_min + (s.x_max - s.x_min) * i / kProbes;
    if (s.energy < s.potential(x)) throw DomainError("energy below the potential inside the turning points");
  }
  if (s.shape != PotentialShape::flat) {
    const double tol = 1e-9 * std::max(std::abs(s.energy), 1e-300);
    if (std::abs(s.potential(s.x_min) - s.energy) > tol || std::abs(s.potential(s.x_max) - s.energy) > tol)
      throw DomainError("turning points do not satisfy V(x) = E");
  }
}

Normalization density_normalization(const BoundState1D& s) {
  auto inv_speed = [&](double x) { return 1.0 / kinetic_root(s, x); };
  // x = c + h sin(theta) cancels the 1/sqrt(E - V) endpoint behaviour at
  // simple turning points and stays smooth at walls.
  const std::size_t panels = s.shape == PotentialShape::generic ? 64 : 16;
  const double integral = integrate_sine_substitution(inv_speed, s.x_min, s.x_max, panels, 20);
  Normalization n;
  n.numeric = 1.0 / integral;
  if (auto tau = s.period()) n.from_period = 2.0 * s.mass / *tau;
  return n;
}

Axis support_axis(const BoundState1D& s, std::size_t count) {
  if (count == 0) throw InputError("grid needs at least one cell", "grid");
  return Axis{s.x_min, s.x_max, count};
}

DensityGrid classical_density(const BoundState1D& s, const Axis& grid) {
  validate(s);
  if (grid.count == 0) throw InputError("grid needs at least one cell", "grid");
  const double norm = density_normalization(s).numeric;

  DensityGrid g;
  g.dimension = 1;
  g.axes = {grid};
  g.values.resize(grid.count);
  g.cell_mass.resize(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double x = grid.node(i);
    if (!(x > s.x_min && x < s.x_max)) throw DomainError("grid node outside the classically allowed region");
    g.values[i] = norm / kinetic_root(s, x);

    const double lo = std::max(grid.lower_edge(i), s.x_min);
    const double hi = std::min(grid.upper_edge(i), s.x_max);
    if (hi > lo) {
      g.cell_mass[i] =
          norm * integrate_sine_substitution([&](double y) { return 1.0 / kinetic_root(s, y); }, lo, hi, 1, 16);
    }
  }
  g.normalization_residual = std::abs(g.total_mass() - 1.0);
  return g;
}

Estimate time_average(const Trajectory& traj, const std::function<double(double, double)>& observable,
                      std::size_t samples) {
  if (samples < 2) throw InputError("time average needs at least two samples", "samples");
  if (!(traj.period > 0.0)) throw UnsupportedError("trajectory is not periodic");

  std::vector<double> cuts{0.0};
  for (double b : traj.breakpoints) {
    if (b > 0.0 && b < traj.period) cuts.push_back(b);
  }
  cuts.push_back(traj.period);
  std::sort(cuts.begin(), cuts.end());

  // Even panel count per piece so both resolutions are valid Simpson rules.
  const std::size_t pieces = cuts.size() - 1;
  std::size_t per_piece = std::max<std::size_t>(4, samples / pieces);
  per_piece += per_piece % 4 == 0 ? 0 : 4 - per_piece % 4;

  auto simpson = [&](double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    // Piece endpoints are nudged inside so a breakpoint is evaluated on the
    // side of the piece being integrated.
    auto f = [&](std::size_t k) {
      double t = a + h * static_cast<double>(k);
      if (k == 0) t = std::nextafter(a, b);
      if (k == n) t = std::nextafter(b, a);
      const PhasePoint pt = traj.at(t);
      return observable(pt.x, pt.p);
    };
    double s = f(0) + f(n);
    for (std::size_t k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k);
    return s * h / 3.0;
  };

  double fine = 0.0;
  double coarse = 0.0;
  for (std::size_t p = 0; p < pieces; ++p) {
    fine += simpson(cuts[p], cuts[p + 1], per_piece);
    coarse += simpson(cuts[p], cuts[p + 1], per_piece / 2);
  }
  return {fine / traj.period, std::abs(fine - coarse) / traj.period};
}

Estimate time_average(const BoundState1D& s, const std::function<double(double, double)>& observable,
                      std::size_t samples) {
  return time_average(require_trajectory(s), observable, samples);
}

ReferenceProducts reference_products() { return {0.5, 1.0 / std::sqrt(12.0)}; }

MomentSet analytic_moments(const BoundState1D& s) {
  MomentSet m;
  m.method = MomentMethod::analytic;
  switch (s.shape) {
    case PotentialShape::harmonic: {
      const double amp = s.x_max;
      m.mean_x2 = amp * amp / 2.0;
      m.mean_p2 = s.mass * s.energy;  // m^2 w^2 A^2 / 2
      return m;
    }
    case PotentialShape::flat: {
      const double len = s.x_max - s.x_min;
      m.mean_x = s.x_min + len / 2.0;
      m.mean_x2 = (s.x_max * s.x_max * s.x_max - s.x_min * s.x_min * s.x_min) / (3.0 * len);
      m.mean_p2 = 2.0 * s.mass * s.energy;
      return m;
    }
    case PotentialShape::generic: break;
  }
  throw UnsupportedError("no closed-form moments for a generic potential");
}

MomentSet quadrature_moments(const BoundState1D& s, std::size_t samples) {
  MomentSet m;
  m.method = MomentMethod::quadrature;
  const auto x = time_average(s, [](double x, double) { return x; }, samples);
  const auto x2 = time_average(s, [](double x, double) { return x * x; }, samples);
  const auto p = time_average(s, [](double, double p) { return p; }, samples);
  const auto p2 = time_average(s, [](double, double p) { return p * p; }, samples);
  m.mean_x = x.value;
  m.mean_x2 = x2.value;
  m.mean_p = p.value;
  m.mean_p2 = p2.value;
  m.error = {x.error, x2.error, p.error, p2.error};
  return m;
}

namespace {

template <class Visit>
void for_each_partition(const BoundState1D& s, std::size_t n_samples, std::uint64_t seed, Visit&& visit) {
  const Trajectory& traj = require_trajectory(s);
  std::vector<std::future<void>> tasks;
  for (std::size_t part = 0; part < kPartitions; ++part) {
    const std::size_t count = n_samples / kPartitions + (part < n_samples % kPartitions ? 1 : 0);
    const std::uint64_t part_seed = splitmix64(seed ^ splitmix64(part + 1));
    tasks.push_back(std::async(std::launch::async, [&, part, count, part_seed] {
      std::mt19937_64 rng(part_seed);
      for (std::size_t i = 0; i < count; ++i) visit(part, traj.at(uniform01(rng) * traj.period));
    }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace

std::vector<PhasePoint> sample_ensemble(const BoundState1D& s, std::size_t n_samples, std::uint64_t seed) {
  std::vector<std::vector<PhasePoint>> parts(kPartitions);
  for_each_partition(s, n_samples, seed, [&](std::size_t part, PhasePoint pt) { parts[part].push_back(pt); });
  std::vector<PhasePoint> out;
  out.reserve(n_samples);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

MomentSet mc_moments(const BoundState1D& s, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw InputError("at least one sample is required", "samples");

  // Per partition: sums of x, x^2, x^4, p, p^2, p^4. Merged in partition order.
  struct Sums {
    double x = 0, x2 = 0, x4 = 0, p = 0, p2 = 0, p4 = 0;
  };
  std::vector<Sums> parts(kPartitions);
  for_each_partition(s, n_samples, seed, [&](std::size_t part, PhasePoint pt) {
    Sums& a = parts[part];
    const double x2 = pt.x * pt.x;
    const double p2 = pt.p * pt.p;
    a.x += pt.x;
    a.x2 += x2;
    a.x4 += x2 * x2;
    a.p += pt.p;
    a.p2 += p2;
    a.p4 += p2 * p2;
  });
  Sums t;
  for (const auto& a : parts) {
    t.x += a.x;
    t.x2 += a.x2;
    t.x4 += a.x4;
    t.p += a.p;
    t.p2 += a.p2;
    t.p4 += a.p4;
  }

  const double n = static_cast<double>(n_samples);
  auto stderr_of = [n](double sum, double sum_sq) {
    if (n < 2) return 0.0;
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return std::sqrt(var / n);
  };
  MomentSet m;
  m.method = MomentMethod::monte_carlo;
  m.mean_x = t.x / n;
  m.mean_x2 = t.x2 / n;
  m.mean_p = t.p / n;
  m.mean_p2 = t.p2 / n;
  m.error = {stderr_of(t.x, t.x2), stderr_of(t.x2, t.x4), stderr_of(t.p, t.p2), stderr_of(t.p2, t.p4)};
  return m;
}

ScaledPair natural_scales(const BoundState1D& s) {
  switch (s.shape) {
    case PotentialShape::harmonic: {
      const double amp = s.x_max;
      const double omega = 2.0 * std::numbers::pi / *s.period();
      return make_scaled_pair(amp, s.mass * omega * amp);
    }
    case PotentialShape::flat:
      return make_scaled_pair(s.x_max - s.x_min, std::sqrt(2.0 * s.mass * s.energy));
    case PotentialShape::generic: break;
  }
  throw UnsupportedError("no natural scales for a generic potential");
}

}  // namespace qcu
