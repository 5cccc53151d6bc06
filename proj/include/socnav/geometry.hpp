#pragma once

#include <cmath>
#include <optional>
#include <variant>

namespace socnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double squared_norm() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Rescales `v` onto the unit disk; vectors already inside are returned as is.
Vec2 clip_to_unit_norm(Vec2 v);

struct Circle {
  Vec2 center;
  double radius = 1.0;
  bool operator==(const Circle&) const = default;
};

/// Axis-aligned rectangle described by its center and half side lengths.
struct AxisRect {
  Vec2 center;
  Vec2 half_extents{1.0, 1.0};
  bool operator==(const AxisRect&) const = default;
};

using Shape = std::variant<Circle, AxisRect>;

/// Throws std::invalid_argument unless radius / half extents are strictly
/// positive and every coordinate is finite.
void validate(const Shape& shape);

Vec2 shape_center(const Shape& shape);

/// Signed Euclidean distance from `point` to the boundary of `shape`;
/// negative strictly inside.
double distance_to_surface(Vec2 point, const Shape& shape);

/// Nearest boundary point. A query exactly at the center of a shape resolves
/// toward +x (for rectangles: the first of +x, -x, +y, -y faces at minimal
/// distance).
Vec2 closest_surface_point(Vec2 point, const Shape& shape);

/// Smallest t >= 0 such that origin + t * direction lies on the boundary.
/// Origins inside or on the shape report t = 0. `direction` must be unit.
std::optional<double> ray_intersect(Vec2 origin, Vec2 direction,
                                    const Shape& shape);

/// Closed containment test (boundary counts as inside).
bool contains(const Shape& shape, Vec2 point);

/// Axis-aligned bounding box as (min corner, max corner).
struct Bounds {
  Vec2 min;
  Vec2 max;
};
Bounds bounding_box(const Shape& shape);

}  // namespace socnav
