#include "socnav/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace socnav {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Vec2 clip_to_unit_norm(Vec2 v) {
  const double n = v.norm();
  return n > 1.0 ? v / n : v;
}

void validate(const Shape& shape) {
  std::visit(Overloaded{
                 [](const Circle& c) {
                   if (!c.center.finite() || !std::isfinite(c.radius)) {
                     throw std::invalid_argument("circle has non-finite coordinates");
                   }
                   if (!(c.radius > 0.0)) {
                     throw std::invalid_argument("circle radius must be > 0");
                   }
                 },
                 [](const AxisRect& r) {
                   if (!r.center.finite() || !r.half_extents.finite()) {
                     throw std::invalid_argument("rectangle has non-finite coordinates");
                   }
                   if (!(r.half_extents.x > 0.0) || !(r.half_extents.y > 0.0)) {
                     throw std::invalid_argument("rectangle half extents must be > 0");
                   }
                 },
             },
             shape);
}

Vec2 shape_center(const Shape& shape) {
  return std::visit([](const auto& s) { return s.center; }, shape);
}

double distance_to_surface(Vec2 point, const Shape& shape) {
  return std::visit(
      Overloaded{
          [&](const Circle& c) { return (point - c.center).norm() - c.radius; },
          [&](const AxisRect& r) {
            const double qx = std::abs(point.x - r.center.x) - r.half_extents.x;
            const double qy = std::abs(point.y - r.center.y) - r.half_extents.y;
            const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
            const double inside = std::min(std::max(qx, qy), 0.0);
            return outside + inside;
          },
      },
      shape);
}

Vec2 closest_surface_point(Vec2 point, const Shape& shape) {
  return std::visit(
      Overloaded{
          [&](const Circle& c) {
            const Vec2 offset = point - c.center;
            const double n = offset.norm();
            if (n == 0.0) {
              return Vec2{c.center.x + c.radius, c.center.y};
            }
            return c.center + offset * (c.radius / n);
          },
          [&](const AxisRect& r) {
            const Vec2 lo = r.center - r.half_extents;
            const Vec2 hi = r.center + r.half_extents;
            const bool inside_x = point.x > lo.x && point.x < hi.x;
            const bool inside_y = point.y > lo.y && point.y < hi.y;
            if (!(inside_x && inside_y)) {
              return Vec2{std::clamp(point.x, lo.x, hi.x), std::clamp(point.y, lo.y, hi.y)};
            }
            // Strictly inside: project onto the nearest face.
            const std::array<double, 4> gaps{hi.x - point.x, point.x - lo.x, hi.y - point.y,
                                             point.y - lo.y};
            const auto best = std::min_element(gaps.begin(), gaps.end()) - gaps.begin();
            switch (best) {
              case 0: return Vec2{hi.x, point.y};
              case 1: return Vec2{lo.x, point.y};
              case 2: return Vec2{point.x, hi.y};
              default: return Vec2{point.x, lo.y};
            }
          },
      },
      shape);
}

std::optional<double> ray_intersect(Vec2 origin, Vec2 direction, const Shape& shape) {
  return std::visit(
      Overloaded{
          [&](const Circle& c) -> std::optional<double> {
            const Vec2 oc = origin - c.center;
            const double cc = oc.squared_norm() - c.radius * c.radius;
            if (cc <= 0.0) {
              return 0.0;
            }
            const double b = dot(oc, direction);
            if (b >= 0.0) {
              return std::nullopt;
            }
            const double disc = b * b - cc;
            if (disc < 0.0) {
              return std::nullopt;
            }
            // Near root written as cc / (-b + sqrt(disc)) to avoid cancellation.
            return cc / (-b + std::sqrt(disc));
          },
          [&](const AxisRect& r) -> std::optional<double> {
            const Vec2 lo = r.center - r.half_extents;
            const Vec2 hi = r.center + r.half_extents;
            if (origin.x >= lo.x && origin.x <= hi.x && origin.y >= lo.y && origin.y <= hi.y) {
              return 0.0;
            }
            double t_enter = -std::numeric_limits<double>::infinity();
            double t_exit = std::numeric_limits<double>::infinity();
            const auto slab = [&](double o, double d, double a, double b) {
              if (d == 0.0) {
                if (o < a || o > b) {
                  t_enter = std::numeric_limits<double>::infinity();
                }
                return;
              }
              double t1 = (a - o) / d;
              double t2 = (b - o) / d;
              if (t1 > t2) {
                std::swap(t1, t2);
              }
              t_enter = std::max(t_enter, t1);
              t_exit = std::min(t_exit, t2);
            };
            slab(origin.x, direction.x, lo.x, hi.x);
            slab(origin.y, direction.y, lo.y, hi.y);
            if (t_enter > t_exit || t_enter < 0.0) {
              return std::nullopt;
            }
            return t_enter;
          },
      },
      shape);
}

bool contains(const Shape& shape, Vec2 point) {
  return std::visit(
      Overloaded{
          [&](const Circle& c) {
            return (point - c.center).squared_norm() <= c.radius * c.radius;
          },
          [&](const AxisRect& r) {
            return std::abs(point.x - r.center.x) <= r.half_extents.x &&
                   std::abs(point.y - r.center.y) <= r.half_extents.y;
          },
      },
      shape);
}

Bounds bounding_box(const Shape& shape) {
  return std::visit(
      Overloaded{
          [](const Circle& c) {
            const Vec2 r{c.radius, c.radius};
            return Bounds{c.center - r, c.center + r};
          },
          [](const AxisRect& r) {
            return Bounds{r.center - r.half_extents, r.center + r.half_extents};
          },
      },
      shape);
}

}  // namespace socnav
