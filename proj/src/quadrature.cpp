#include "qcu/quadrature.hpp"

#include "qcu/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace qcu {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InputError("quadrature order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

namespace {

// Orthonormal Hermite recurrence at z, rescaled as it grows. Returns
// p_n(z) / p_{n-1}(z) and log|p_{n-1}(z)| so large arguments never overflow.
struct HermiteTail {
  double ratio = 0.0;
  double log_prev = 0.0;
};

HermiteTail orthonormal_tail(std::size_t n, double z) {
  double p1 = std::pow(std::numbers::pi, -0.25);
  double p2 = 0.0;
  double log_scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    const double jd = static_cast<double>(j);
    p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
    if (std::abs(p1) > 1e100) {
      p1 *= 1e-100;
      p2 *= 1e-100;
      log_scale += 100.0 * std::numbers::ln10;
    }
  }
  return {p1 / p2, std::log(std::abs(p2)) + log_scale};
}

}  // namespace

QuadratureRule gauss_hermite(std::size_t n) {
  if (n == 0) throw InputError("quadrature order must be positive");
  // Golub-Welsch eigenvalues for the nodes, then Newton polishing; weights
  // come from the recurrence, which keeps tiny tail weights accurate.
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  rule.log_weights.assign(n, 0.0);
  if (n > 1) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n - 1));
    for (std::size_t j = 1; j < n; ++j) sub[static_cast<Eigen::Index>(j - 1)] = std::sqrt(0.5 * static_cast<double>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (std::size_t i = 0; i < n; ++i) rule.nodes[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
  }
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = rule.nodes[i];
    HermiteTail t = orthonormal_tail(n, z);
    for (int it = 0; it < 4; ++it) {
      // p_n' = sqrt(2n) p_{n-1}, so the Newton step is p_n / p_n' = ratio / sqrt(2n).
      const double dz = t.ratio / std::sqrt(2.0 * nd);
      z -= dz;
      t = orthonormal_tail(n, z);
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.log_weights[i] = -std::log(nd) - 2.0 * t.log_prev;
  }
  // Exact symmetry.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double z = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double lw = 0.5 * (rule.log_weights[n - 1 - i] + rule.log_weights[i]);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.log_weights[i] = rule.log_weights[n - 1 - i] = lw;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  for (std::size_t i = 0; i < n; ++i) rule.weights[i] = std::exp(rule.log_weights[i]);
  return rule;
}

namespace {

const QuadratureRule& cached_legendre(std::size_t order) {
  static std::mutex mu;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order)).first;
  return it->second;
}

}  // namespace

double integrate_gl(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                    std::size_t order) {
  if (panels == 0) throw InputError("panel count must be positive");
  const QuadratureRule& rule = cached_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

double integrate_sine_substitution(const std::function<double(double)>& f, double a, double b,
                                   std::size_t panels, std::size_t order) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto g = [&](double theta) { return f(c + h * std::sin(theta)) * h * std::cos(theta); };
  return integrate_gl(g, -std::numbers::pi / 2, std::numbers::pi / 2, panels, order);
}

}  // namespace qcu
