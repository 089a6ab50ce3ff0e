#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperlattice/errors.hpp"

namespace hyperlattice::quadrature {

/// Nodes and weights of a one-dimensional rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

namespace detail {

/// Legendre P_n(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace detail

/// Gauss-Legendre rule of the given order on [-1, 1] (Newton on P_n).
inline Rule gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  if (order == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(order, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = detail::legendre_with_derivative(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

/// Composite Gauss-Legendre on [lo, hi] with `panels` equal panels.
inline Rule composite_gauss(double lo, double hi, int panels, int order) {
  if (panels < 1) throw DomainError("composite_gauss: panels must be >= 1");
  const Rule base = gauss_legendre(order);
  Rule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * order);
  rule.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

/// Trapezoidal rule with `count` nodes on [lo, hi], endpoints included.
inline Rule trapezoid(double lo, double hi, int count) {
  if (count < 2) throw DomainError("trapezoid: need at least 2 nodes");
  Rule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = lo + i * h;
    rule.weights[i] = (i == 0 || i == count - 1) ? 0.5 * h : h;
  }
  return rule;
}

/// Periodic trapezoid: `count` equispaced nodes on [lo, lo + period).
inline Rule periodic(double lo, double period, int count) {
  if (count < 1) throw DomainError("periodic: need at least 1 node");
  Rule rule;
  rule.nodes.resize(count);
  rule.weights.assign(count, period / count);
  for (int i = 0; i < count; ++i) rule.nodes[i] = lo + period * i / count;
  return rule;
}

}  // namespace hyperlattice::quadrature
