#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kuz/fe_space.hpp"
#include "kuz/geometry.hpp"
#include "kuz/sparse.hpp"

namespace kuz {

/// Pointwise mass weight w(x) = a + b * field(x), with `field` a function on
/// the same space evaluated at quadrature points.
struct MassWeight {
  std::span<const double> field;
  double a = 1.0;
  double b = 0.0;
};

/// Which DOFs an assembled operator acts on.
enum class DofSet {
  kAll,   // full space, no boundary conditions applied
  kFree,  // Dirichlet DOFs eliminated (rows and columns removed)
};

/// CSR structure of the cell-coupling graph of a space together with, for
/// each cell, the value slot of every local (i, j) pair. Assembling into a
/// fixed pattern visits cells in index order, which sums duplicates in the
/// same order as a stably sorted coordinate buffer would.
class SparsityPattern {
 public:
  SparsityPattern(const FeSpace& space, DofSet set);

  DofSet dof_set() const { return set_; }
  std::size_t size() const { return n_; }
  std::size_t nnz() const { return cols_.size(); }

  /// Slot of local pair (i, j) in cell c, or -1 when either DOF is eliminated.
  int slot(std::size_t cell, int i, int j) const { return slots_[(cell * nloc_ + i) * nloc_ + j]; }
  /// Row of local DOF i of cell c, or -1.
  int row(std::size_t cell, int i) const { return rows_[cell * nloc_ + i]; }

  SparseMatrix make_matrix(std::vector<double> values) const;

 private:
  DofSet set_;
  std::size_t n_ = 0;
  int nloc_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> cols_;
  std::vector<int> slots_;
  std::vector<int> rows_;
};

/// M_ij = int w phi_j phi_i. Without a weight, w = 1.
SparseMatrix assemble_mass(const FeSpace& s, std::optional<MassWeight> weight = std::nullopt,
                           DofSet set = DofSet::kAll);

/// A_ij = int grad phi_j . grad phi_i.
SparseMatrix assemble_stiffness(const FeSpace& s, DofSet set = DofSet::kAll);

/// C_ij = int (grad w . grad phi_j) phi_i. Generally nonsymmetric.
SparseMatrix assemble_convection(const FeSpace& s, std::span<const double> w,
                                 DofSet set = DofSet::kAll);

/// b_i = int g(x, t) phi_i, by the space's quadrature rule.
std::vector<double> assemble_load(const FeSpace& s, const SpaceTimeFn& g, double t,
                                  DofSet set = DofSet::kAll);
std::vector<double> assemble_load(const FeSpace& s, const SpatialFn& g,
                                  DofSet set = DofSet::kAll);

/// b_i = int G(x) . grad phi_i, the right-hand side of the Ritz projection.
std::vector<double> assemble_gradient_load(const FeSpace& s, const SpatialGradFn& grad_g,
                                           DofSet set = DofSet::kAll);

}  // namespace kuz
