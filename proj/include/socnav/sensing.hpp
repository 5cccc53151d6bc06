#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "socnav/simulator.hpp"

namespace socnav {

enum class Modality : std::uint8_t {
  kClosestObstacle = 1U << 0,
  kRaycast = 1U << 1,
  kLeog = 1U << 2,
};

/// Set of enabled modalities.
class ModalitySet {
 public:
  constexpr ModalitySet() = default;
  constexpr ModalitySet(std::initializer_list<Modality> ms) {
    for (Modality m : ms) {
      bits_ |= static_cast<std::uint8_t>(m);
    }
  }
  constexpr bool has(Modality m) const { return (bits_ & static_cast<std::uint8_t>(m)) != 0; }
  constexpr void set(Modality m) { bits_ |= static_cast<std::uint8_t>(m); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const ModalitySet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

enum class CoordinateFormat { kPolar, kCartesian };

struct SensorConfig {
  ModalitySet modalities{Modality::kClosestObstacle, Modality::kRaycast, Modality::kLeog};
  CoordinateFormat closest_format = CoordinateFormat::kPolar;
  std::size_t ray_count = 360;
  double ray_max_range = 5.0;
  double leog_side = 6.0;
  double leog_resolution = 0.1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Cells per grid side; leog_side / leog_resolution rounded.
  std::size_t leog_cells() const;
  bool operator==(const SensorConfig&) const = default;
};

/// Row-major binary grid; row 0 at minimum y, column 0 at minimum x.
struct OccupancyGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;

  std::uint8_t at(std::size_t row, std::size_t col) const { return cells[row * cols + col]; }
  bool operator==(const OccupancyGrid&) const = default;
};

struct GoalObservation {
  double distance = 0.0;
  double angle = 0.0;  // world frame, (-pi, pi]
  bool operator==(const GoalObservation&) const = default;
};

struct Observation {
  std::optional<std::array<double, 2>> closest;
  std::optional<std::vector<double>> raycast;
  std::optional<OccupancyGrid> leog;
  GoalObservation goal;
  bool operator==(const Observation&) const = default;
};

class NoObstaclesError : public std::runtime_error {
 public:
  NoObstaclesError() : std::runtime_error("no obstacles to sense") {}
};

/// Folds atan2 output onto (-pi, pi].
double wrap_angle(double radians);

/// Surface point of the obstacle nearest the agent center, scanning statics
/// before humans; earlier entries win ties. Returns (signed distance,
/// surface point). Throws NoObstaclesError on an empty scene.
struct ClosestHit {
  double distance;
  Vec2 point;
};
ClosestHit find_closest_obstacle(const WorldState& state);

/// Polar: (distance to the surface point, world bearing). Cartesian: offset
/// from the agent center to the surface point.
std::array<double, 2> sense_closest(const WorldState& state, CoordinateFormat format);

/// World-frame direction of ray `k` out of `ray_count`.
Vec2 ray_direction(std::size_t k, std::size_t ray_count);

std::vector<double> sense_raycast(const WorldState& state, const SensorConfig& cfg);
void sense_raycast(const WorldState& state, const SensorConfig& cfg, std::span<double> out);

/// World coordinates of the center of cell (row, col) for a grid centered
/// on `agent`.
Vec2 leog_cell_center(Vec2 agent, const SensorConfig& cfg, std::size_t row, std::size_t col);

OccupancyGrid sense_leog(const WorldState& state, const SensorConfig& cfg);

GoalObservation sense_goal(const WorldState& state);

/// Builds an observation carrying exactly the modalities enabled in `cfg`.
/// An empty scene reports the closest obstacle as a virtual hit at
/// ray_max_range straight along +x.
Observation observe(const WorldState& state, const SensorConfig& cfg);

}  // namespace socnav
