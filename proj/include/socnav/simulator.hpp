#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "socnav/geometry.hpp"
#include "socnav/rng.hpp"

namespace socnav {

struct Human {
  Vec2 pos;
  double radius = 0.3;
  Vec2 goal;
  double max_speed = 1.0;
  bool operator==(const Human&) const = default;
};

/// Holonomic world-frame velocity command; components are clamped to [-1, 1].
class Action {
 public:
  Action() = default;
  /// Throws std::invalid_argument on NaN components.
  Action(double vx, double vy);

  double vx() const { return vx_; }
  double vy() const { return vy_; }
  Vec2 as_vec() const { return {vx_, vy_}; }
  bool operator==(const Action&) const = default;

 private:
  double vx_ = 0.0;
  double vy_ = 0.0;
};

struct SimParams {
  double dt = 0.1;
  double agent_max_speed = 1.5;
  double human_max_speed = 1.0;
  double d_sat = 1.0;  // goal-force saturation distance
  double r_soc = 1.5;  // repulsion cutoff
  double w_goal = 1.0;
  double w_soc = 1.0;
  /// Humans closer than this to their goal receive a new one.
  double human_goal_radius = 0.3;
  /// Minimum distance between a human and a freshly sampled goal.
  double human_goal_min_distance = 2.0;

  /// Throws std::invalid_argument naming the first non-positive field.
  void validate() const;
  bool operator==(const SimParams&) const = default;
};

struct WorldState {
  Vec2 arena{10.0, 10.0};  // the arena spans [0, arena.x] x [0, arena.y]
  Vec2 agent_pos;
  double agent_radius = 0.3;
  Vec2 agent_goal;
  std::vector<Human> humans;
  std::vector<Shape> static_obstacles;
  std::uint64_t step_index = 0;
  Rng rng;

  bool operator==(const WorldState&) const = default;
};

enum class Termination { kSuccess, kCollision };

/// Unit-saturated attraction: direction to `goal`, magnitude
/// min(distance / d_sat, 1).
Vec2 goal_force(Vec2 pos, Vec2 goal, double d_sat);

/// Linear-ramp repulsion summed over `others`; each contribution has
/// magnitude max(0, (r_soc - d) / r_soc) pointing away from the other.
/// Coincident positions push along +x with unit magnitude.
Vec2 social_force(Vec2 subject, std::span<const Vec2> others, double r_soc);

/// Repulsion from the nearest surface point of each static shape within
/// r_soc, using the same linear ramp on the signed surface distance
/// (capped at unit magnitude per shape).
Vec2 obstacle_force(Vec2 subject, std::span<const Shape> obstacles, double r_soc);

/// Draws a goal inside the arena, at least `min_distance` from `from` and
/// clear of static shapes by `clearance`. Returns nullopt after 10,000
/// rejected draws.
std::optional<Vec2> sample_human_goal(const WorldState& state, Vec2 from, double clearance,
                                      double min_distance, Rng& rng);

/// Pure transition: agent moves by the action, humans by the weighted goal
/// and social forces. The agent exerts no force on humans.
WorldState step(const WorldState& state, const Action& action, const SimParams& params);

/// In-place variant of `step`; `state` is replaced by the successor.
void step_in_place(WorldState& state, const Action& action, const SimParams& params);

std::optional<Termination> check_termination(const WorldState& state, double goal_radius);

}  // namespace socnav
