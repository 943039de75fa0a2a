#include "kuz/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "kuz/errors.hpp"

namespace kuz {

namespace {
constexpr double kBoundaryTol = 1e-12;
}

bool on_rect_boundary(const Rect& r, Point2 p) {
  return std::abs(p.x - r.x_min) <= kBoundaryTol || std::abs(p.x - r.x_max) <= kBoundaryTol ||
         std::abs(p.y - r.y_min) <= kBoundaryTol || std::abs(p.y - r.y_max) <= kBoundaryTol;
}

Mesh::Mesh(Rect domain, std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : domain_(domain), vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  boundary_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    boundary_[i] = on_rect_boundary(domain_, vertices_[i]);
  }
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int v : triangles_[t]) {
      if (v < 0 || static_cast<std::size_t>(v) >= vertices_.size()) {
        throw ConfigError("mesh: triangle " + std::to_string(t) + " references vertex " +
                          std::to_string(v) + " out of range");
      }
    }
    if (!(signed_area(t) > 0.0)) {
      throw ConfigError("mesh: triangle " + std::to_string(t) + " is not counter-clockwise");
    }
  }
}

double Mesh::signed_area(std::size_t t) const {
  const auto& tri = triangles_[t];
  const Point2 a = vertices_[tri[0]];
  const Point2 b = vertices_[tri[1]];
  const Point2 c = vertices_[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Mesh build_rect_mesh(const Rect& bounds, int nx, int ny) {
  if (nx < 1 || ny < 1) {
    throw ConfigError("build_rect_mesh: nx and ny must be >= 1");
  }
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min) ||
      !std::isfinite(bounds.area())) {
    throw ConfigError("build_rect_mesh: degenerate rectangle");
  }

  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    // Pin the last row/column to the bounds so boundary flags are exact.
    const double y = j == ny ? bounds.y_max : bounds.y_min + bounds.height() * j / ny;
    for (int i = 0; i <= nx; ++i) {
      const double x = i == nx ? bounds.x_max : bounds.x_min + bounds.width() * i / nx;
      vertices.push_back({x, y});
    }
  }

  std::vector<Mesh::Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(nx) * ny);
  const auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = id(i, j);
      const int v10 = id(i + 1, j);
      const int v01 = id(i, j + 1);
      const int v11 = id(i + 1, j + 1);
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  }
  return Mesh(bounds, std::move(vertices), std::move(triangles));
}

double mesh_size(const Mesh& m) {
  double h = 0.0;
  const auto& v = m.vertices();
  for (const auto& tri : m.triangles()) {
    for (int e = 0; e < 3; ++e) {
      h = std::max(h, norm(v[tri[(e + 1) % 3]] - v[tri[e]]));
    }
  }
  return h;
}

Mesh refine_uniform(const Mesh& m) {
  std::vector<Point2> vertices = m.vertices();
  std::map<std::pair<int, int>, int> midpoint;
  const auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    const auto [it, inserted] = midpoint.try_emplace({key.first, key.second}, 0);
    if (inserted) {
      const Point2 pa = vertices[a];
      const Point2 pb = vertices[b];
      it->second = static_cast<int>(vertices.size());
      vertices.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
    }
    return it->second;
  };

  std::vector<Mesh::Triangle> triangles;
  triangles.reserve(4 * m.num_triangles());
  for (const auto& [a, b, c] : m.triangles()) {
    const int ab = mid(a, b);
    const int bc = mid(b, c);
    const int ca = mid(c, a);
    triangles.push_back({a, ab, ca});
    triangles.push_back({ab, b, bc});
    triangles.push_back({ca, bc, c});
    triangles.push_back({ab, bc, ca});
  }
  return Mesh(m.domain(), std::move(vertices), std::move(triangles));
}

}  // namespace kuz
