#pragma once

#include <span>
#include <vector>

#include "kuz/geometry.hpp"

namespace kuz {

/// Number of Lagrange basis functions of degree k on a triangle.
constexpr int num_local_dofs(int k) { return (k + 1) * (k + 2) / 2; }

/// Lagrange nodes on the reference triangle, in local DOF order:
/// the three vertices, then k-1 nodes along each edge (0->1, 1->2, 2->0)
/// ordered from the edge's first vertex, then interior nodes.
std::vector<Point2> reference_nodes(int k);

struct BasisEval {
  std::vector<double> values;
  std::vector<Vec2> gradients;  // with respect to reference coordinates
};

/// Values and reference gradients of all degree-k Lagrange basis functions
/// at `p`. Throws ConfigError unless k is 1, 2 or 3.
BasisEval reference_basis(int k, Point2 p);

/// Allocation-free variant; spans must hold num_local_dofs(k) entries.
void reference_basis(int k, Point2 p, std::span<double> values, std::span<Vec2> gradients);

}  // namespace kuz
