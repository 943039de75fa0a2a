#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kuz/geometry.hpp"

namespace kuz {

/// Conforming triangulation of a rectangle. Triangles are counter-clockwise.
/// Immutable after construction.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;

  Mesh(Rect domain, std::vector<Point2> vertices, std::vector<Triangle> triangles);

  const Rect& domain() const { return domain_; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<bool>& boundary_vertex() const { return boundary_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  /// Signed area of triangle `t` (positive for CCW).
  double signed_area(std::size_t t) const;

 private:
  Rect domain_;
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<bool> boundary_;
};

/// True iff `p` lies on the boundary of `r` within absolute tolerance 1e-12.
bool on_rect_boundary(const Rect& r, Point2 p);

/// Uniform nx x ny grid, each cell split along the (x_min,y_min)->(x_max,y_max)
/// diagonal direction. Throws ConfigError on nx == 0, ny == 0 or a degenerate
/// rectangle.
Mesh build_rect_mesh(const Rect& bounds, int nx, int ny);

/// Maximum edge length over all triangles.
double mesh_size(const Mesh& m);

/// Red refinement: every triangle is split into four by its edge midpoints.
/// Coarse vertices keep their indices; midpoints are appended.
Mesh refine_uniform(const Mesh& m);

}  // namespace kuz
