#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qcu {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// log of each weight; finite even where the weight underflows.
  std::vector<double> log_weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// n-point Gauss-Hermite rule for weight exp(-u^2) on the real line.
/// Nodes are ascending; weights sum to sqrt(pi).
QuadratureRule gauss_hermite(std::size_t n);

/// Composite Gauss-Legendre integral of f over [a, b] with `panels` equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t panels = 16, std::size_t order = 16);

/// Integral over [a, b] of f after the substitution x = c + h sin(theta).
/// Removes inverse-square-root endpoint singularities and smooths square-root
/// endpoint behaviour.
double integrate_sine_substitution(const std::function<double(double)>& f, double a, double b,
                                   std::size_t panels = 8, std::size_t order = 16);

}  // namespace qcu
