#include "kuz/fe_space.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "kuz/basis.hpp"
#include "kuz/errors.hpp"

namespace kuz {

FeSpace::FeSpace(Mesh mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree), nloc_(num_local_dofs(degree)) {
  if (degree < 1 || degree > 3) {
    throw ConfigError("FeSpace: degree must be 1, 2 or 3 (got " + std::to_string(degree) + ")");
  }
  const auto& verts = mesh_.vertices();
  const auto& tris = mesh_.triangles();
  const int k = degree_;
  const std::size_t ncells = tris.size();

  dof_coords_ = verts;
  cell_dofs_.assign(ncells * nloc_, -1);

  // Edge DOFs are stored along the edge from the lower to the higher vertex id.
  std::unordered_map<std::uint64_t, int> edge_base;
  edge_base.reserve(3 * ncells);
  const auto edge_key = [](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
  };
  constexpr int kEdges[3][2] = {{0, 1}, {1, 2}, {2, 0}};

  for (std::size_t c = 0; c < ncells; ++c) {
    int* dofs = cell_dofs_.data() + c * nloc_;
    const auto& tri = tris[c];
    for (int i = 0; i < 3; ++i) dofs[i] = tri[i];
    if (k == 1) continue;
    for (int e = 0; e < 3; ++e) {
      const int ga = tri[kEdges[e][0]];
      const int gb = tri[kEdges[e][1]];
      auto [it, inserted] = edge_base.try_emplace(edge_key(ga, gb), 0);
      if (inserted) {
        it->second = static_cast<int>(dof_coords_.size());
        const Point2 lo = verts[std::min(ga, gb)];
        const Point2 hi = verts[std::max(ga, gb)];
        for (int s = 1; s < k; ++s) {
          const double t = static_cast<double>(s) / k;
          dof_coords_.push_back({(1.0 - t) * lo.x + t * hi.x, (1.0 - t) * lo.y + t * hi.y});
        }
      }
      for (int s = 1; s < k; ++s) {
        const int offset = ga < gb ? s - 1 : k - 1 - s;
        dofs[3 + e * (k - 1) + (s - 1)] = it->second + offset;
      }
    }
    if (k == 3) {
      const Point2 a = verts[tri[0]];
      const Point2 b = verts[tri[1]];
      const Point2 cc = verts[tri[2]];
      dofs[9] = static_cast<int>(dof_coords_.size());
      dof_coords_.push_back({(a.x + b.x + cc.x) / 3.0, (a.y + b.y + cc.y) / 3.0});
    }
  }

  const std::size_t ndofs = dof_coords_.size();
  dirichlet_.assign(ndofs, 0);
  free_index_.assign(ndofs, -1);
  for (std::size_t i = 0; i < ndofs; ++i) {
    if (on_rect_boundary(mesh_.domain(), dof_coords_[i])) {
      dirichlet_[i] = 1;
    } else {
      free_index_[i] = static_cast<int>(free_dofs_.size());
      free_dofs_.push_back(static_cast<int>(i));
    }
  }

  geometry_.resize(ncells);
  for (std::size_t c = 0; c < ncells; ++c) {
    const Point2 a = verts[tris[c][0]];
    const Point2 b = verts[tris[c][1]];
    const Point2 cc = verts[tris[c][2]];
    CellGeometry& g = geometry_[c];
    g.origin = a;
    g.jac = {b.x - a.x, cc.x - a.x, b.y - a.y, cc.y - a.y};
    g.det = g.jac[0] * g.jac[3] - g.jac[1] * g.jac[2];
    g.inv_jac = {g.jac[3] / g.det, -g.jac[1] / g.det, -g.jac[2] / g.det, g.jac[0] / g.det};
  }

  rule_ = quadrature(default_quadrature_order(k));
  phi_.resize(rule_.size() * nloc_);
  dphi_.resize(rule_.size() * nloc_);
  for (std::size_t q = 0; q < rule_.size(); ++q) {
    reference_basis(k, rule_.points[q], std::span<double>(phi_.data() + q * nloc_, nloc_),
                    std::span<Vec2>(dphi_.data() + q * nloc_, nloc_));
  }
}

PointValue FeSpace::evaluate(std::span<const double> u, std::size_t cell, Point2 p) const {
  if (cell >= num_cells()) {
    throw ConfigError("evaluate_field: cell " + std::to_string(cell) + " out of range");
  }
  if (u.size() != num_dofs()) {
    throw ConfigError("evaluate_field: coefficient vector has wrong size");
  }
  double vals[10];
  Vec2 grads[10];
  reference_basis(degree_, p, std::span<double>(vals, nloc_), std::span<Vec2>(grads, nloc_));
  const auto dofs = cell_dofs(cell);
  PointValue out;
  Vec2 gref;
  for (int i = 0; i < nloc_; ++i) {
    const double ui = u[dofs[i]];
    out.value += ui * vals[i];
    gref = gref + ui * grads[i];
  }
  out.grad = geometry_[cell].push_gradient(gref);
  return out;
}

std::vector<double> FeSpace::restrict_to_free(std::span<const double> full) const {
  std::vector<double> out(free_dofs_.size());
  for (std::size_t i = 0; i < free_dofs_.size(); ++i) out[i] = full[free_dofs_[i]];
  return out;
}

FieldCoeffs FeSpace::extend_from_free(std::span<const double> free) const {
  FieldCoeffs out(num_dofs(), 0.0);
  for (std::size_t i = 0; i < free_dofs_.size(); ++i) out[free_dofs_[i]] = free[i];
  return out;
}

PointValue evaluate_field(const FeSpace& s, std::span<const double> u, std::size_t cell,
                          Point2 p) {
  return s.evaluate(u, cell, p);
}

}  // namespace kuz
