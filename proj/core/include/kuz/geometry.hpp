#pragma once

#include <cmath>
#include <functional>

namespace kuz {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

using Vec2 = Point2;

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Rect {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
};

using SpatialFn = std::function<double(Point2)>;
using SpatialGradFn = std::function<Vec2(Point2)>;
using SpaceTimeFn = std::function<double(Point2, double)>;
using SpaceTimeGradFn = std::function<Vec2(Point2, double)>;

/// A function together with its gradient, as needed by the Ritz projection.
struct DifferentiableFn {
  SpatialFn value;
  SpatialGradFn grad;
};

}  // namespace kuz
