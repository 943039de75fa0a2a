#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "kuz/geometry.hpp"
#include "kuz/mesh.hpp"
#include "kuz/quadrature.hpp"

namespace kuz {

/// Coefficients of a finite element function, one per global DOF.
using FieldCoeffs = std::vector<double>;

/// Affine map from the reference triangle to a mesh cell.
struct CellGeometry {
  Point2 origin;
  std::array<double, 4> jac;      // row-major [dx/dxi dx/deta; dy/dxi dy/deta]
  std::array<double, 4> inv_jac;  // row-major inverse of jac
  double det = 0.0;               // twice the cell area

  Point2 map(Point2 ref) const {
    return {origin.x + jac[0] * ref.x + jac[1] * ref.y,
            origin.y + jac[2] * ref.x + jac[3] * ref.y};
  }
  Point2 inverse_map(Point2 x) const {
    const double dx = x.x - origin.x;
    const double dy = x.y - origin.y;
    return {inv_jac[0] * dx + inv_jac[1] * dy, inv_jac[2] * dx + inv_jac[3] * dy};
  }
  /// Physical gradient from a reference gradient: J^{-T} g.
  Vec2 push_gradient(Vec2 g) const {
    return {inv_jac[0] * g.x + inv_jac[2] * g.y, inv_jac[1] * g.x + inv_jac[3] * g.y};
  }
};

struct PointValue {
  double value = 0.0;
  Vec2 grad;
};

/// Continuous Lagrange space of degree k in {1, 2, 3} on a Mesh, with
/// homogeneous Dirichlet constraints on every DOF located on the boundary.
///
/// Besides the DOF layout the space caches per-cell affine geometry and the
/// basis tabulated at its default quadrature rule (exact to degree max(6, 3k)),
/// which every assembly and norm routine uses.
class FeSpace {
 public:
  FeSpace(Mesh mesh, int degree);

  const Mesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int dofs_per_cell() const { return nloc_; }
  std::size_t num_dofs() const { return dof_coords_.size(); }
  std::size_t num_cells() const { return mesh_.num_triangles(); }
  std::size_t num_free() const { return free_dofs_.size(); }

  const std::vector<Point2>& dof_coords() const { return dof_coords_; }
  std::span<const int> cell_dofs(std::size_t cell) const {
    return {cell_dofs_.data() + cell * nloc_, static_cast<std::size_t>(nloc_)};
  }
  const std::vector<char>& dirichlet_mask() const { return dirichlet_; }
  bool is_dirichlet(std::size_t dof) const { return dirichlet_[dof] != 0; }

  /// Position of `dof` among the unconstrained DOFs, or -1 if constrained.
  int free_index(std::size_t dof) const { return free_index_[dof]; }
  const std::vector<int>& free_dofs() const { return free_dofs_; }

  const CellGeometry& geometry(std::size_t cell) const { return geometry_[cell]; }

  const QuadratureRule& rule() const { return rule_; }
  /// Basis value of local function i at rule point q.
  double phi(std::size_t q, int i) const { return phi_[q * nloc_ + i]; }
  /// Reference gradient of local function i at rule point q.
  Vec2 dphi_ref(std::size_t q, int i) const { return dphi_[q * nloc_ + i]; }

  /// Value and physical gradient of `u` at the image of reference point `p`
  /// in `cell`. Throws ConfigError for an invalid cell or coefficient size.
  PointValue evaluate(std::span<const double> u, std::size_t cell, Point2 p) const;

  /// Extract the free entries of a full-length vector.
  std::vector<double> restrict_to_free(std::span<const double> full) const;
  /// Scatter free entries into a full-length vector with zeros on the boundary.
  FieldCoeffs extend_from_free(std::span<const double> free) const;

 private:
  Mesh mesh_;
  int degree_;
  int nloc_;
  std::vector<Point2> dof_coords_;
  std::vector<int> cell_dofs_;
  std::vector<char> dirichlet_;
  std::vector<int> free_index_;
  std::vector<int> free_dofs_;
  std::vector<CellGeometry> geometry_;
  QuadratureRule rule_;
  std::vector<double> phi_;
  std::vector<Vec2> dphi_;
};

/// Quadrature order used by FeSpace for degree k.
constexpr int default_quadrature_order(int k) { return 3 * k > 6 ? 3 * k : 6; }

/// Free-function form of FeSpace::evaluate.
PointValue evaluate_field(const FeSpace& s, std::span<const double> u, std::size_t cell,
                          Point2 p);

}  // namespace kuz
