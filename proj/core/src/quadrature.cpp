#include "kuz/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kuz/errors.hpp"

namespace kuz {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Tricomi estimate of the i-th root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Map [-1, 1] -> [0, 1]; store ascending.
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule quadrature(int order) {
  if (order < 0 || order > kMaxQuadratureOrder) {
    throw ConfigError("quadrature: unsupported order " + std::to_string(order));
  }
  // xi = a, eta = b (1 - a); the Jacobian (1 - a) adds one degree in a.
  const int na = (order + 3) / 2;
  const int nb = (order + 2) / 2;
  std::vector<double> xa, wa, xb, wb;
  gauss_legendre_01(na, xa, wa);
  gauss_legendre_01(nb, xb, wb);

  QuadratureRule rule;
  rule.degree = order;
  rule.points.reserve(na * nb);
  rule.weights.reserve(na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      rule.points.push_back({xa[i], xb[j] * (1.0 - xa[i])});
      rule.weights.push_back(wa[i] * wb[j] * (1.0 - xa[i]));
    }
  }
  return rule;
}

}  // namespace kuz
