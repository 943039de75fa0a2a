#include "kuz/discrete_ops.hpp"

#include <cmath>

#include "kuz/assembly.hpp"

namespace kuz {

RitzProjector::RitzProjector(const FeSpace& space)
    : space_(space),
      stiffness_all_(assemble_stiffness(space, DofSet::kAll)),
      stiffness_free_(assemble_stiffness(space, DofSet::kFree)),
      lu_(stiffness_free_) {}

FieldCoeffs RitzProjector::project(const DifferentiableFn& g) const {
  if (space_.num_free() == 0) return FieldCoeffs(space_.num_dofs(), 0.0);
  const std::vector<double> b = assemble_gradient_load(space_, g.grad, DofSet::kFree);
  return space_.extend_from_free(lu_.solve(b));
}

FieldCoeffs RitzProjector::project(std::span<const double> coeffs) const {
  if (coeffs.size() != space_.num_dofs()) {
    throw ConfigError("ritz_project: coefficient vector has wrong size");
  }
  if (space_.num_free() == 0) return FieldCoeffs(space_.num_dofs(), 0.0);
  const std::vector<double> full = stiffness_all_ * coeffs;
  return space_.extend_from_free(lu_.solve(space_.restrict_to_free(full)));
}

FieldCoeffs ritz_project(const FeSpace& s, const DifferentiableFn& g) {
  return RitzProjector(s).project(g);
}

FieldCoeffs nodal_interpolate(const FeSpace& s, const SpatialFn& g) {
  FieldCoeffs u(s.num_dofs(), 0.0);
  const auto& x = s.dof_coords();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!s.is_dirichlet(i)) u[i] = g(x[i]);
  }
  return u;
}

FieldCoeffs discrete_laplacian(const FeSpace& s, std::span<const double> u) {
  if (u.size() != s.num_dofs()) throw ConfigError("discrete_laplacian: wrong coefficient size");
  if (s.num_free() == 0) return FieldCoeffs(s.num_dofs(), 0.0);
  const SparseMatrix a = assemble_stiffness(s, DofSet::kAll);
  const SparseMatrix m = assemble_mass(s, std::nullopt, DofSet::kFree);
  std::vector<double> rhs = s.restrict_to_free(a * u);
  for (double& r : rhs) r = -r;
  return s.extend_from_free(solve_direct(m, rhs));
}

DifferentiableFn with_fd_gradient(SpatialFn g, double step) {
  auto grad = [g, step](Point2 x) -> Vec2 {
    const double gx = (g({x.x + step, x.y}) - g({x.x - step, x.y})) / (2.0 * step);
    const double gy = (g({x.x, x.y + step}) - g({x.x, x.y - step})) / (2.0 * step);
    return {gx, gy};
  };
  return {std::move(g), std::move(grad)};
}

}  // namespace kuz
