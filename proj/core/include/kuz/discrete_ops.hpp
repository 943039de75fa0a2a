#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kuz/errors.hpp"
#include "kuz/fe_space.hpp"
#include "kuz/geometry.hpp"
#include "kuz/solvers.hpp"
#include "kuz/sparse.hpp"

namespace kuz {

/// H^1_0 elliptic projection onto a space. Holds the factorized stiffness
/// matrix so that several projections on one space share a factorization.
class RitzProjector {
 public:
  explicit RitzProjector(const FeSpace& space);
  RitzProjector(RitzProjector&&) = delete;

  /// R_h g from (grad R_h g, grad phi) = (grad g, grad phi); boundary DOFs are 0.
  FieldCoeffs project(const DifferentiableFn& g) const;
  /// R_h of a function already given by coefficients on the space.
  FieldCoeffs project(std::span<const double> coeffs) const;

  const FeSpace& space() const { return space_; }

 private:
  const FeSpace& space_;
  SparseMatrix stiffness_all_;
  SparseMatrix stiffness_free_;
  LuFactorization lu_;
};

FieldCoeffs ritz_project(const FeSpace& s, const DifferentiableFn& g);

/// Coefficient i = g(dof_coords[i]), boundary DOFs forced to zero.
FieldCoeffs nodal_interpolate(const FeSpace& s, const SpatialFn& g);

/// Delta_h u: the w in V_h with (w, phi) = -(grad u, grad phi) for all phi.
FieldCoeffs discrete_laplacian(const FeSpace& s, std::span<const double> u);

/// Attach a central-difference gradient to a pointwise function.
DifferentiableFn with_fd_gradient(SpatialFn g, double step = 1e-5);

/// Equidistant samples a^0, a^1, ... with spacing tau.
template <class T>
struct TimeSeries {
  double tau = 0.0;
  std::vector<T> values;
};

namespace detail {
inline double axpby(double a, double x, double b, double y) { return a * x + b * y; }
inline std::vector<double> axpby(double a, const std::vector<double>& x, double b,
                                 const std::vector<double>& y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}
}  // namespace detail

/// m-th backward difference quotient d_tau^m a^n, defined recursively by
/// d_tau a^n = (a^n - a^{n-1}) / tau. Requires 1 <= m <= n < values.size().
template <class T>
T dtau(const TimeSeries<T>& ts, int m, std::size_t n) {
  if (!(ts.tau > 0.0)) throw ConfigError("dtau: tau must be positive");
  if (m < 1 || n < static_cast<std::size_t>(m) || n >= ts.values.size()) {
    throw ConfigError("dtau: need 1 <= m <= n < length (m=" + std::to_string(m) +
                      ", n=" + std::to_string(n) + ")");
  }
  std::vector<T> d(ts.values.begin() + (n - m), ts.values.begin() + n + 1);
  const double inv = 1.0 / ts.tau;
  for (int level = 0; level < m; ++level) {
    for (std::size_t i = 0; i + 1 < d.size() - level; ++i) {
      d[i] = detail::axpby(inv, d[i + 1], -inv, d[i]);
    }
  }
  return d.front();
}

}  // namespace kuz
