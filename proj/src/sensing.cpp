#include "socnav/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace socnav {

namespace {

// Statics first, then humans as circles. Order defines tie-breaking.
template <class Fn>
void for_each_obstacle(const WorldState& state, Fn&& fn) {
  for (const Shape& s : state.static_obstacles) {
    fn(s);
  }
  for (const Human& h : state.humans) {
    fn(Shape{Circle{h.pos, h.radius}});
  }
}

}  // namespace

void SensorConfig::validate() const {
  if (ray_count < 4) {
    throw std::invalid_argument("sensors.ray_count must be >= 4");
  }
  if (!(ray_max_range > 0.0) || !std::isfinite(ray_max_range)) {
    throw std::invalid_argument("sensors.ray_max_range must be a finite value > 0");
  }
  if (!(leog_side > 0.0) || !std::isfinite(leog_side)) {
    throw std::invalid_argument("sensors.leog_side must be a finite value > 0");
  }
  if (!(leog_resolution > 0.0) || !std::isfinite(leog_resolution)) {
    throw std::invalid_argument("sensors.leog_resolution must be a finite value > 0");
  }
  const double cells = leog_side / leog_resolution;
  if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells) || cells < 1.0) {
    throw std::invalid_argument(
        "sensors.leog_side must be a whole number of leog_resolution cells");
  }
}

std::size_t SensorConfig::leog_cells() const {
  return static_cast<std::size_t>(std::llround(leog_side / leog_resolution));
}

double wrap_angle(double radians) {
  radians = std::remainder(radians, 2.0 * std::numbers::pi);
  return radians <= -std::numbers::pi ? radians + 2.0 * std::numbers::pi : radians;
}

ClosestHit find_closest_obstacle(const WorldState& state) {
  std::optional<ClosestHit> best;
  for_each_obstacle(state, [&](const Shape& s) {
    const double d = distance_to_surface(state.agent_pos, s);
    if (!best || d < best->distance) {
      best = ClosestHit{d, closest_surface_point(state.agent_pos, s)};
    }
  });
  if (!best) {
    throw NoObstaclesError();
  }
  return *best;
}

std::array<double, 2> sense_closest(const WorldState& state, CoordinateFormat format) {
  const ClosestHit hit = find_closest_obstacle(state);
  const Vec2 offset = hit.point - state.agent_pos;
  if (format == CoordinateFormat::kCartesian) {
    return {offset.x, offset.y};
  }
  const double bearing = offset == Vec2{} ? 0.0 : wrap_angle(std::atan2(offset.y, offset.x));
  return {hit.distance, bearing};
}

Vec2 ray_direction(std::size_t k, std::size_t ray_count) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(ray_count);
  return {std::cos(angle), std::sin(angle)};
}

void sense_raycast(const WorldState& state, const SensorConfig& cfg, std::span<double> out) {
  if (out.size() != cfg.ray_count) {
    throw std::invalid_argument("raycast buffer length must equal ray_count");
  }
  // Shapes wholly beyond range can never shorten a ray.
  std::vector<Shape> near;
  for_each_obstacle(state, [&](const Shape& s) {
    if (distance_to_surface(state.agent_pos, s) < cfg.ray_max_range) {
      near.push_back(s);
    }
  });
  for (std::size_t k = 0; k < cfg.ray_count; ++k) {
    const Vec2 dir = ray_direction(k, cfg.ray_count);
    double best = cfg.ray_max_range;
    for (const Shape& s : near) {
      if (auto t = ray_intersect(state.agent_pos, dir, s); t && *t < best) {
        best = *t;
      }
    }
    out[k] = best;
  }
}

std::vector<double> sense_raycast(const WorldState& state, const SensorConfig& cfg) {
  std::vector<double> out(cfg.ray_count);
  sense_raycast(state, cfg, out);
  return out;
}

Vec2 leog_cell_center(Vec2 agent, const SensorConfig& cfg, std::size_t row, std::size_t col) {
  const double half = cfg.leog_side / 2.0;
  return {agent.x - half + (static_cast<double>(col) + 0.5) * cfg.leog_resolution,
          agent.y - half + (static_cast<double>(row) + 0.5) * cfg.leog_resolution};
}

OccupancyGrid sense_leog(const WorldState& state, const SensorConfig& cfg) {
  const std::size_t n = cfg.leog_cells();
  OccupancyGrid grid{n, n, std::vector<std::uint8_t>(n * n, 0)};
  const double half = cfg.leog_side / 2.0;
  const Vec2 origin = state.agent_pos - Vec2{half, half};
  const auto index_range = [&](double lo, double hi, double base) {
    // Widened by one cell; the exact predicate below decides membership.
    const double first = std::floor((lo - base) / cfg.leog_resolution - 0.5) - 1.0;
    const double last = std::ceil((hi - base) / cfg.leog_resolution - 0.5) + 1.0;
    const double max_index = static_cast<double>(n) - 1.0;
    return std::pair{static_cast<long>(std::clamp(first, 0.0, max_index + 1.0)),
                     static_cast<long>(std::clamp(last, -1.0, max_index))};
  };
  for_each_obstacle(state, [&](const Shape& s) {
    const Bounds box = bounding_box(s);
    const auto [c0, c1] = index_range(box.min.x, box.max.x, origin.x);
    const auto [r0, r1] = index_range(box.min.y, box.max.y, origin.y);
    for (long r = r0; r <= r1; ++r) {
      for (long c = c0; c <= c1; ++c) {
        auto& cell = grid.cells[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)];
        if (cell == 0 && contains(s, leog_cell_center(state.agent_pos, cfg,
                                                      static_cast<std::size_t>(r),
                                                      static_cast<std::size_t>(c)))) {
          cell = 1;
        }
      }
    }
  });
  return grid;
}

GoalObservation sense_goal(const WorldState& state) {
  const Vec2 offset = state.agent_goal - state.agent_pos;
  const double distance = offset.norm();
  if (distance == 0.0) {
    return {0.0, 0.0};
  }
  return {distance, wrap_angle(std::atan2(offset.y, offset.x))};
}

Observation observe(const WorldState& state, const SensorConfig& cfg) {
  Observation obs;
  if (cfg.modalities.has(Modality::kClosestObstacle)) {
    if (state.humans.empty() && state.static_obstacles.empty()) {
      obs.closest = std::array<double, 2>{cfg.ray_max_range, 0.0};
    } else {
      obs.closest = sense_closest(state, cfg.closest_format);
    }
  }
  if (cfg.modalities.has(Modality::kRaycast)) {
    obs.raycast = sense_raycast(state, cfg);
  }
  if (cfg.modalities.has(Modality::kLeog)) {
    obs.leog = sense_leog(state, cfg);
  }
  obs.goal = sense_goal(state);
  return obs;
}

}  // namespace socnav
