#include "qcu/quantum1d.hpp"

#include "qcu/errors.hpp"
#include "qcu/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace qcu {

namespace {

constexpr std::int64_t kDirectDegree = 30;
constexpr double kRescale = 1e100;

// H_n and H_{n-1} up to a common factor exp(log_scale).
struct ScaledHermite {
  double h_n = 1.0;
  double h_prev = 0.0;
  double log_scale = 0.0;
};

ScaledHermite hermite_scaled(std::int64_t n, double u) {
  if (n < 0) throw InputError("Hermite degree must be non-negative", "n");
  ScaledHermite s;
  if (n == 0) return s;
  double h0 = 1.0;
  double h1 = 2.0 * u;
  for (std::int64_t k = 1; k < n; ++k) {
    const double h2 = 2.0 * u * h1 - 2.0 * static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
    if (std::abs(h1) > kRescale) {
      h0 /= kRescale;
      h1 /= kRescale;
      s.log_scale += std::log(kRescale);
    }
  }
  s.h_n = h1;
  s.h_prev = h0;
  return s;
}

const QuadratureRule& cached_hermite_rule(std::size_t nodes) {
  static std::mutex mu;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(nodes);
  if (it == cache.end()) it = cache.emplace(nodes, gauss_hermite(nodes)).first;
  return it->second;
}

std::size_t hermite_nodes(std::int64_t n) { return static_cast<std::size_t>(4 * n + 64); }

double log_or_neg_inf(double v) {
  return v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(v));
}

void check_mode(double mass, double omega, double hbar) {
  if (!(mass > 0.0)) throw InputError("mass must be positive", "mass");
  if (!(omega > 0.0)) throw InputError("omega must be positive", "omega");
  if (!(hbar > 0.0)) throw InputError("hbar must be positive", "hbar");
}

struct QuadratureMoments {
  double x = 0.0;
  double x2 = 0.0;
  double p2_scaled = 0.0;  // <p^2> (x0/hbar)^2
};

QuadratureMoments quadrature_moments_scaled(std::int64_t n, std::size_t nodes) {
  const QuadratureRule& rule = cached_hermite_rule(nodes);
  const std::size_t m = rule.nodes.size();
  std::vector<double> log_a(m);
  std::vector<double> log_d(m);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double u = rule.nodes[i];
    const ScaledHermite h = hermite_scaled(n, u);
    // phi' / phi-prefactor = (2n H_{n-1} - u H_n) exp(-u^2/2)
    const double d = 2.0 * static_cast<double>(n) * h.h_prev - u * h.h_n;
    const double lw = rule.log_weights[i];
    log_a[i] = lw + 2.0 * (log_or_neg_inf(h.h_n) + h.log_scale);
    log_d[i] = lw + 2.0 * (log_or_neg_inf(d) + h.log_scale);
    shift = std::max({shift, log_a[i], log_d[i]});
  }
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double sd = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double u = rule.nodes[i];
    const double a = std::exp(log_a[i] - shift);
    s0 += a;
    s1 += u * a;
    s2 += u * u * a;
    sd += std::exp(log_d[i] - shift);
  }
  return {s1 / s0, s2 / s0, sd / s0};
}

}  // namespace

double hermite_eval(std::int64_t n, double u) {
  if (n <= kDirectDegree) {
    const ScaledHermite h = hermite_scaled(n, u);
    return h.h_n * std::exp(h.log_scale);
  }
  const ScaledHermite h = hermite_scaled(n, u);
  if (h.h_n == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(h.h_n)) + h.log_scale), h.h_n);
}

double hermite_gauss(std::int64_t n, double u) {
  if (n <= kDirectDegree) return hermite_eval(n, u) * std::exp(-0.5 * u * u);
  const ScaledHermite h = hermite_scaled(n, u);
  if (h.h_n == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(h.h_n)) + h.log_scale - 0.5 * u * u), h.h_n);
}

LogHermite log_hermite(std::int64_t n, double u) {
  const ScaledHermite h = hermite_scaled(n, u);
  if (h.h_n == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(h.h_n)) + h.log_scale, h.h_n > 0.0 ? 1 : -1};
}

HOEigenstate::HOEigenstate(std::int64_t n, double mass, double omega, double hbar) : n_(n) {
  if (n < 0) throw InputError("quantum number must be non-negative", "n");
  check_mode(mass, omega, hbar);
  x0_ = std::sqrt(hbar / (mass * omega));

  // int phi^2 dx = N^2 x0 int H_n(u)^2 exp(-u^2) du, the latter by Gauss-Hermite.
  const QuadratureRule& rule = cached_hermite_rule(hermite_nodes(n));
  std::vector<double> logs;
  logs.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const LogHermite lh = log_hermite(n, rule.nodes[i]);
    if (lh.sign != 0) logs.push_back(2.0 * lh.log_abs + rule.log_weights[i]);
  }
  const double shift = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - shift);
  log_norm_ = -0.5 * (std::log(x0_) + shift + std::log(sum));
}

double HOEigenstate::operator()(double x) const {
  const double u = x / x0_;
  // Forty oscillator lengths past the turning point the value underflows.
  if (!(std::abs(u) < std::sqrt(2.0 * static_cast<double>(n_) + 1.0) + 40.0)) return 0.0;
  const LogHermite lh = log_hermite(n_, u);
  if (lh.sign == 0) return 0.0;
  return lh.sign * std::exp(lh.log_abs + log_norm_ - 0.5 * u * u);
}

double HOEigenstate::density(double x) const {
  const double v = (*this)(x);
  return v * v;
}

MomentSet ho_moments(std::int64_t n, double mass, double omega, double hbar) {
  if (n < 0) throw InputError("quantum number must be non-negative", "n");
  check_mode(mass, omega, hbar);
  const double level = 2.0 * static_cast<double>(n) + 1.0;
  MomentSet m;
  m.method = MomentMethod::analytic;
  m.mean_x2 = level * hbar / (2.0 * mass * omega);
  m.mean_p2 = level * mass * hbar * omega / 2.0;
  return m;
}

MomentSet ho_moments_quadrature(std::int64_t n, double mass, double omega, double hbar) {
  if (n < 0) throw InputError("quantum number must be non-negative", "n");
  check_mode(mass, omega, hbar);
  const double x0 = std::sqrt(hbar / (mass * omega));
  const QuadratureMoments fine = quadrature_moments_scaled(n, hermite_nodes(n));
  const QuadratureMoments coarse = quadrature_moments_scaled(n, static_cast<std::size_t>(2 * n + 32));
  const double p0 = hbar / x0;
  MomentSet m;
  m.method = MomentMethod::quadrature;
  m.mean_x = x0 * fine.x;
  m.mean_x2 = x0 * x0 * fine.x2;
  m.mean_p = 0.0;  // real eigenfunction
  m.mean_p2 = p0 * p0 * fine.p2_scaled;
  m.error.mean_x = x0 * std::abs(fine.x - coarse.x);
  m.error.mean_x2 = x0 * x0 * std::abs(fine.x2 - coarse.x2);
  m.error.mean_p2 = p0 * p0 * std::abs(fine.p2_scaled - coarse.p2_scaled);
  return m;
}

double arcsine_density(double x, double amplitude) {
  if (!(std::abs(x) < amplitude)) return 0.0;
  return 1.0 / (std::numbers::pi * std::sqrt((amplitude - x) * (amplitude + x)));
}

double arcsine_cdf(double x, double amplitude) {
  if (x <= -amplitude) return 0.0;
  if (x >= amplitude) return 1.0;
  return 0.5 + std::asin(x / amplitude) / std::numbers::pi;
}

Axis default_axis_1d(std::int64_t n, const ModeParams& mode, std::size_t count) {
  const double amp = turning_point(n, mode.mass, mode.omega, mode.hbar);
  const double x0 = std::sqrt(mode.hbar / (mode.mass * mode.omega));
  const double r = amp + 6.0 * x0;
  return Axis{-r, r, count};
}

DensityGrid density_1d(DensityKind kind, std::int64_t n, const ModeParams& mode, std::optional<Axis> axis,
                       std::size_t count) {
  if (n < 0) throw InputError("quantum number must be non-negative", "n");
  check_mode(mode.mass, mode.omega, mode.hbar);
  const Axis ax = axis ? *axis : default_axis_1d(n, mode, count);
  if (ax.count < 16) throw InputError("grid resolution must be at least 16", "grid");
  if (!(ax.max > ax.min)) throw InputError("grid axis must have max > min", "grid");

  if (kind == DensityKind::quantum) {
    const HOEigenstate phi(n, mode.mass, mode.omega, mode.hbar);
    std::vector<double> values(ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) values[i] = phi.density(ax.node(i));
    return midpoint_grid({ax}, std::move(values));
  }

  const double amp = turning_point(n, mode.mass, mode.omega, mode.hbar);
  DensityGrid g;
  g.dimension = 1;
  g.axes = {ax};
  g.values.resize(ax.count);
  g.cell_mass.resize(ax.count);
  for (std::size_t i = 0; i < ax.count; ++i) {
    g.values[i] = arcsine_density(ax.node(i), amp);
    g.cell_mass[i] = arcsine_cdf(ax.upper_edge(i), amp) - arcsine_cdf(ax.lower_edge(i), amp);
  }
  g.normalization_residual = std::abs(g.total_mass() - 1.0);
  return g;
}

namespace {

// x1 = (x_c + a x_r)/sqrt2, x2 = (x_c - b x_r)/sqrt2 with a + b = 2 for both
// coupled systems (a = m2/M, b = m1/M; a = b = 1 for equal masses).
struct PlaneMap {
  double a = 1.0;
  double b = 1.0;

  double xc(double x1, double x2) const { return std::numbers::sqrt2 * (b * x1 + a * x2) / (a + b); }
  double xr(double x1, double x2) const { return std::numbers::sqrt2 * (x1 - x2) / (a + b); }
  /// |d(x1, x2) / d(x_c, x_r)|
  double jacobian() const { return 0.5 * (a + b); }
};

struct ModePair {
  PlaneMap map;
  ModeParams c;
  ModeParams r;
  QuantumModeState state;
};

// Probability of the cell [x1a, x1b] x [x2a, x2b] under the product of
// arcsine densities in (x_c, x_r). The x_r integral is done exactly with the
// CDF; the x_c integral is split at every kink of the inner integrand and
// each piece is integrated after a sine substitution.
double classical_cell_mass(const PlaneMap& pm, double amp_c, double amp_r, double x1a, double x1b, double x2a,
                           double x2b, const QuadratureRule& rule) {
  const double s2 = std::numbers::sqrt2;
  const double a = pm.a;
  const double b = pm.b;
  const double corners[4] = {pm.xc(x1a, x2a), pm.xc(x1a, x2b), pm.xc(x1b, x2a), pm.xc(x1b, x2b)};
  double lo = std::max(*std::min_element(corners, corners + 4), -amp_c);
  double hi = std::min(*std::max_element(corners, corners + 4), amp_c);
  if (!(hi > lo)) return 0.0;

  auto inner = [&](double xc) {
    double r_lo = std::max((s2 * x1a - xc) / a, (xc - s2 * x2b) / b);
    double r_hi = std::min((s2 * x1b - xc) / a, (xc - s2 * x2a) / b);
    if (!(r_hi > r_lo)) return 0.0;
    return arcsine_cdf(r_hi, amp_r) - arcsine_cdf(r_lo, amp_r);
  };

  std::vector<double> cuts{lo, hi};
  for (double c : corners) cuts.push_back(c);
  for (double sgn : {-1.0, 1.0}) {
    cuts.push_back(s2 * x1a - a * sgn * amp_r);
    cuts.push_back(s2 * x1b - a * sgn * amp_r);
    cuts.push_back(s2 * x2a + b * sgn * amp_r);
    cuts.push_back(s2 * x2b + b * sgn * amp_r);
  }
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  double prev = lo;
  for (double c : cuts) {
    if (c <= prev) continue;
    const double next = std::min(c, hi);
    if (next <= prev) continue;
    const double mid = 0.5 * (prev + next);
    const double half = 0.5 * (next - prev);
    double piece = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double theta = 0.5 * std::numbers::pi * rule.nodes[k];
      const double xc = mid + half * std::sin(theta);
      piece += rule.weights[k] * arcsine_density(xc, amp_c) * inner(xc) * half * std::cos(theta);
    }
    total += 0.5 * std::numbers::pi * piece;
    prev = next;
    if (prev >= hi) break;
  }
  return total;
}

DensityPair plane_densities(const ModePair& mp, std::size_t count, std::optional<Axis> axis) {
  if (count < 16 && !axis) throw InputError("grid resolution must be at least 16", "grid");
  const PlaneMap& pm = mp.map;
  const double amp_c = turning_point(mp.state.n_c, mp.c.mass, mp.c.omega, mp.state.hbar);
  const double amp_r = turning_point(mp.state.n_r, mp.r.mass, mp.r.omega, mp.state.hbar);
  const double x0c = std::sqrt(mp.state.hbar / (mp.c.mass * mp.c.omega));
  const double x0r = std::sqrt(mp.state.hbar / (mp.r.mass * mp.r.omega));

  Axis ax;
  if (axis) {
    ax = *axis;
  } else {
    const double reach = std::max(amp_c + pm.a * amp_r, amp_c + pm.b * amp_r) / std::numbers::sqrt2;
    const double tail = 6.0 * (x0c + std::max(pm.a, pm.b) * x0r) / std::numbers::sqrt2;
    ax = Axis{-(reach + tail), reach + tail, count};
  }
  if (ax.count < 16) throw InputError("grid resolution must be at least 16", "grid");

  const HOEigenstate phi_c(mp.state.n_c, mp.c.mass, mp.c.omega, mp.state.hbar);
  const HOEigenstate phi_r(mp.state.n_r, mp.r.mass, mp.r.omega, mp.state.hbar);
  const double jac = pm.jacobian();
  const std::size_t n = ax.count;

  std::vector<double> qv(n * n);
  DensityGrid cl;
  cl.dimension = 2;
  cl.axes = {ax, ax};
  cl.values.assign(n * n, 0.0);
  cl.cell_mass.assign(n * n, 0.0);
  const QuadratureRule rule = gauss_legendre(8);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = ax.node(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double x2 = ax.node(j);
      const double xc = pm.xc(x1, x2);
      const double xr = pm.xr(x1, x2);
      qv[i * n + j] = phi_c.density(xc) * phi_r.density(xr) / jac;
      cl.values[i * n + j] = arcsine_density(xc, amp_c) * arcsine_density(xr, amp_r) / jac;
      cl.cell_mass[i * n + j] = classical_cell_mass(pm, amp_c, amp_r, ax.lower_edge(i), ax.upper_edge(i),
                                                    ax.lower_edge(j), ax.upper_edge(j), rule);
    }
  }
  cl.normalization_residual = std::abs(cl.total_mass() - 1.0);
  return {midpoint_grid({ax, ax}, std::move(qv)), std::move(cl)};
}

}  // namespace

DensityPair density_2d(const EqualMassSystem& sys, const QuantumModeState& state, std::size_t count,
                       std::optional<Axis> axis) {
  validate(state);
  if (!(sys.mass > 0.0) || !(sys.k > 0.0) || !(sys.k_coupling >= 0.0))
    throw InputError("equal-mass system needs m, k > 0 and k' >= 0", "params");
  ModePair mp;
  mp.map = {1.0, 1.0};
  mp.c = {sys.mass, sys.omega_c(), state.hbar};
  mp.r = {sys.mass, sys.omega_r(), state.hbar};
  mp.state = state;
  return plane_densities(mp, count, axis);
}

DensityPair density_2d(const UnequalMassSystem& sys, const QuantumModeState& state, std::size_t count,
                       std::optional<Axis> axis) {
  validate(state);
  if (!(sys.m1 > 0.0) || !(sys.m2 > 0.0) || !(sys.omega > 0.0) || !(sys.k >= 0.0))
    throw InputError("unequal-mass system needs m1, m2, omega > 0 and k >= 0", "params");
  const double big_m = sys.total_mass();
  ModePair mp;
  mp.map = {sys.m2 / big_m, sys.m1 / big_m};
  mp.c = {big_m, sys.omega_c(), state.hbar};
  mp.r = {sys.reduced_mass(), sys.omega_r(), state.hbar};
  mp.state = state;
  return plane_densities(mp, count, axis);
}

namespace {

// Mass-conserving Gaussian blur of `mass` along one axis of a row-major grid.
std::vector<double> blur_axis(const std::vector<double>& mass, std::size_t rows, std::size_t cols, bool along_rows,
                              double width, double spacing) {
  const std::size_t len = along_rows ? cols : rows;
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(8.0 * width / spacing));
  std::vector<double> kernel(static_cast<std::size_t>(reach) + 1);
  for (std::ptrdiff_t d = 0; d <= reach; ++d) {
    const double x = static_cast<double>(d) * spacing / width;
    kernel[static_cast<std::size_t>(d)] = std::exp(-0.5 * x * x);
  }
  // Each source cell spreads its mass over the cells the kernel reaches on
  // this grid, renormalized so nothing leaks past the boundary.
  std::vector<double> spread(len, 0.0);
  for (std::size_t s = 0; s < len; ++s) {
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(s) - reach);
    const auto hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(len) - 1, static_cast<std::ptrdiff_t>(s) + reach);
    double z = 0.0;
    for (auto t = lo; t <= hi; ++t) z += kernel[static_cast<std::size_t>(std::abs(t - static_cast<std::ptrdiff_t>(s)))];
    spread[s] = 1.0 / z;
  }

  std::vector<double> out(mass.size(), 0.0);
  const std::size_t lines = along_rows ? rows : cols;
  for (std::size_t line = 0; line < lines; ++line) {
    auto idx = [&](std::size_t k) { return along_rows ? line * cols + k : k * cols + line; };
    for (std::size_t s = 0; s < len; ++s) {
      const double m = mass[idx(s)] * spread[s];
      if (m == 0.0) continue;
      const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(s) - reach);
      const auto hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(len) - 1, static_cast<std::ptrdiff_t>(s) + reach);
      for (auto t = lo; t <= hi; ++t)
        out[idx(static_cast<std::size_t>(t))] += m * kernel[static_cast<std::size_t>(std::abs(t - static_cast<std::ptrdiff_t>(s)))];
    }
  }
  return out;
}

std::vector<double> normalized(std::vector<double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (!(total > 0.0)) throw InputError("density carries no mass on the grid", "grid");
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

double smear_and_compare(const DensityGrid& quantum, const DensityGrid& classical, double width) {
  if (!quantum.same_layout(classical)) throw InputError("quantum and classical grids do not match", "grid");
  if (!(width >= 0.0) || !std::isfinite(width)) throw InputError("smear width must be non-negative", "width");

  std::vector<double> q = quantum.cell_mass;
  if (width > 0.0) {
    if (quantum.dimension == 1) {
      q = blur_axis(q, 1, quantum.axes[0].count, true, width, quantum.axes[0].width());
    } else {
      const std::size_t rows = quantum.axes[0].count;
      const std::size_t cols = quantum.axes[1].count;
      q = blur_axis(q, rows, cols, true, width, quantum.axes[1].width());
      q = blur_axis(q, rows, cols, false, width, quantum.axes[0].width());
    }
  }
  q = normalized(std::move(q));
  const std::vector<double> c = normalized(classical.cell_mass);
  double l1 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) l1 += std::abs(q[i] - c[i]);
  return l1;
}

std::size_t count_local_maxima(const DensityGrid& grid) {
  if (grid.dimension != 1) throw InputError("maxima are counted on 1D grids only", "dim");
  const auto& v = grid.values;
  if (v.size() < 3) return 0;
  const double floor = 1e-10 * *std::max_element(v.begin(), v.end());
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > floor && v[i] > v[i - 1] && v[i] >= v[i + 1]) ++count;
  }
  return count;
}

std::vector<ConvergenceRow> converge(const std::vector<std::int64_t>& levels, const ModeParams& mode, double width,
                                     std::size_t count) {
  const double x0 = std::sqrt(mode.hbar / (mode.mass * mode.omega));
  const double w = width > 0.0 ? width : x0;
  std::vector<ConvergenceRow> rows;
  for (std::int64_t n : levels) {
    const Axis ax = default_axis_1d(n, mode, count);
    const DensityGrid q = density_1d(DensityKind::quantum, n, mode, ax);
    const DensityGrid c = density_1d(DensityKind::classical, n, mode, ax);
    rows.push_back({n, w, smear_and_compare(q, c, w)});
  }
  return rows;
}

}  // namespace qcu
