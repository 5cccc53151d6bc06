#include "socnav/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace socnav {

namespace {

constexpr int kMaxGoalDraws = 10'000;

// One linear-ramp contribution pushing `subject` away from `source`.
Vec2 ramp_repulsion(Vec2 subject, Vec2 source, double r_soc) {
  const Vec2 away = subject - source;
  const double d = away.norm();
  if (d >= r_soc) {
    return {};
  }
  if (d == 0.0) {
    return {1.0, 0.0};
  }
  return (away / d) * ((r_soc - d) / r_soc);
}

}  // namespace

Action::Action(double vx, double vy) {
  if (std::isnan(vx) || std::isnan(vy)) {
    throw std::invalid_argument("action components must not be NaN");
  }
  vx_ = std::clamp(vx, -1.0, 1.0);
  vy_ = std::clamp(vy, -1.0, 1.0);
}

void SimParams::validate() const {
  const auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("sim.") + name + " must be a finite value > 0");
    }
  };
  require(dt, "dt");
  require(agent_max_speed, "agent_max_speed");
  require(human_max_speed, "human_max_speed");
  require(d_sat, "d_sat");
  require(r_soc, "r_soc");
  require(w_goal, "w_goal");
  require(w_soc, "w_soc");
  require(human_goal_radius, "human_goal_radius");
  if (!(human_goal_min_distance >= 0.0)) {
    throw std::invalid_argument("sim.human_goal_min_distance must be >= 0");
  }
}

Vec2 goal_force(Vec2 pos, Vec2 goal, double d_sat) {
  const Vec2 offset = goal - pos;
  const double d = offset.norm();
  if (d == 0.0) {
    return {};
  }
  return offset * (std::min(d / d_sat, 1.0) / d);
}

Vec2 social_force(Vec2 subject, std::span<const Vec2> others, double r_soc) {
  Vec2 total;
  for (const Vec2& other : others) {
    total += ramp_repulsion(subject, other, r_soc);
  }
  return total;
}

Vec2 obstacle_force(Vec2 subject, std::span<const Shape> obstacles, double r_soc) {
  Vec2 total;
  for (const Shape& shape : obstacles) {
    const double sd = distance_to_surface(subject, shape);
    if (sd >= r_soc) {
      continue;
    }
    const Vec2 surface = closest_surface_point(subject, shape);
    Vec2 away = sd < 0.0 ? surface - subject : subject - surface;
    const double n = away.norm();
    away = n > 0.0 ? away / n : Vec2{1.0, 0.0};
    total += away * std::min((r_soc - sd) / r_soc, 1.0);
  }
  return total;
}

std::optional<Vec2> sample_human_goal(const WorldState& state, Vec2 from, double clearance,
                                      double min_distance, Rng& rng) {
  const double lo_x = std::min(clearance, state.arena.x / 2);
  const double lo_y = std::min(clearance, state.arena.y / 2);
  for (int attempt = 0; attempt < kMaxGoalDraws; ++attempt) {
    const Vec2 candidate{rng.uniform(lo_x, state.arena.x - lo_x),
                         rng.uniform(lo_y, state.arena.y - lo_y)};
    if ((candidate - from).norm() < min_distance) {
      continue;
    }
    const bool clear = std::none_of(
        state.static_obstacles.begin(), state.static_obstacles.end(),
        [&](const Shape& s) { return distance_to_surface(candidate, s) <= clearance; });
    if (clear) {
      return candidate;
    }
  }
  return std::nullopt;
}

void step_in_place(WorldState& state, const Action& action, const SimParams& params) {
  state.agent_pos += action.as_vec() * (params.agent_max_speed * params.dt);

  const std::size_t n = state.humans.size();
  std::vector<Vec2> velocity(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Human& h = state.humans[i];
    Vec2 social;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        social += ramp_repulsion(h.pos, state.humans[j].pos, params.r_soc);
      }
    }
    social += obstacle_force(h.pos, state.static_obstacles, params.r_soc);
    const Vec2 drive = goal_force(h.pos, h.goal, params.d_sat) * params.w_goal + social * params.w_soc;
    velocity[i] = clip_to_unit_norm(drive) * h.max_speed;
  }
  for (std::size_t i = 0; i < n; ++i) {
    state.humans[i].pos += velocity[i] * params.dt;
  }
  for (Human& h : state.humans) {
    if ((h.goal - h.pos).norm() < params.human_goal_radius) {
      if (auto goal = sample_human_goal(state, h.pos, h.radius, params.human_goal_min_distance,
                                        state.rng)) {
        h.goal = *goal;
      }
    }
  }
  ++state.step_index;
}

WorldState step(const WorldState& state, const Action& action, const SimParams& params) {
  WorldState next = state;
  step_in_place(next, action, params);
  return next;
}

std::optional<Termination> check_termination(const WorldState& state, double goal_radius) {
  if ((state.agent_pos - state.agent_goal).norm() < goal_radius) {
    return Termination::kSuccess;
  }
  for (const Human& h : state.humans) {
    if ((state.agent_pos - h.pos).norm() < state.agent_radius + h.radius) {
      return Termination::kCollision;
    }
  }
  for (const Shape& s : state.static_obstacles) {
    if (distance_to_surface(state.agent_pos, s) < state.agent_radius) {
      return Termination::kCollision;
    }
  }
  return std::nullopt;
}

}  // namespace socnav
