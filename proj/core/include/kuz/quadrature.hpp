#pragma once

#include <vector>

#include "kuz/geometry.hpp"

namespace kuz {

/// Quadrature on the reference triangle {(0,0), (1,0), (0,1)}.
/// Weights sum to 1/2, the reference area.
struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

inline constexpr int kMaxQuadratureOrder = 30;

/// Collapsed (Duffy) Gauss-Legendre product rule exact for all polynomials of
/// total degree <= order. All weights are positive. Throws ConfigError for
/// order < 0 or order > kMaxQuadratureOrder.
QuadratureRule quadrature(int order);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace kuz
