#include "socnav/episode.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace socnav {

namespace {

constexpr int kMaxSpawnDraws = 10'000;

void require(bool ok, const char* field, const char* message) {
  if (!ok) {
    throw ConfigError(field, message);
  }
}

// Uniform point inside the arena keeping `margin` from its borders.
Vec2 draw_in_arena(const ScenarioConfig& config, double margin, Rng& rng) {
  const double mx = std::min(margin, config.arena.x / 2);
  const double my = std::min(margin, config.arena.y / 2);
  return {rng.uniform(mx, config.arena.x - mx), rng.uniform(my, config.arena.y - my)};
}

bool clear_of_statics(const ScenarioConfig& config, Vec2 p, double clearance) {
  return std::none_of(config.static_obstacles.begin(), config.static_obstacles.end(),
                      [&](const Shape& s) { return distance_to_surface(p, s) <= clearance; });
}

template <class Accept>
Vec2 draw_until(const ScenarioConfig& config, double margin, Rng& rng, Accept&& accept) {
  for (int attempt = 0; attempt < kMaxSpawnDraws; ++attempt) {
    const Vec2 p = draw_in_arena(config, margin, rng);
    if (accept(p)) {
      return p;
    }
  }
  throw ScenarioError("scenario too crowded");
}

}  // namespace

void ScenarioConfig::validate() const {
  require(arena.finite() && arena.x > 0.0 && arena.y > 0.0, "arena",
          "width and height must be finite values > 0");
  require(std::isfinite(agent_radius) && agent_radius > 0.0, "agent_radius", "must be > 0");
  require(std::isfinite(human_radius) && human_radius > 0.0, "human_radius", "must be > 0");
  require(std::isfinite(goal_radius) && goal_radius > 0.0, "goal_radius", "must be > 0");
  require(max_steps >= 1, "max_steps", "must be >= 1");
  require(std::isfinite(min_start_goal_distance) && min_start_goal_distance >= 0.0,
          "min_start_goal_distance", "must be >= 0");
  require(min_start_goal_distance < std::hypot(arena.x, arena.y), "min_start_goal_distance",
          "exceeds the arena diagonal");
  for (std::size_t i = 0; i < static_obstacles.size(); ++i) {
    const std::string field = "static_obstacles[" + std::to_string(i) + "]";
    try {
      socnav::validate(static_obstacles[i]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
    const Bounds box = bounding_box(static_obstacles[i]);
    if (box.min.x < 0.0 || box.min.y < 0.0 || box.max.x > arena.x || box.max.y > arena.y) {
      throw ConfigError(field, "obstacle must lie within the arena");
    }
  }
  try {
    sim.validate();
    sensors.validate();
    rewards.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const auto colon = what.find(' ');
    throw ConfigError(what.substr(0, colon == std::string::npos ? 0 : colon),
                      colon == std::string::npos ? what : what.substr(colon + 1));
  }
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess: return "Success";
    case Outcome::kCollision: return "Collision";
    case Outcome::kTruncated: return "Truncated";
  }
  return "?";
}

std::uint64_t derive_episode_seed(std::uint64_t config_seed, std::uint64_t episode_seed,
                                  SeedNamespace ns) {
  const std::uint64_t key = mix64(mix64(config_seed) ^ episode_seed);
  return (key << 1) | static_cast<std::uint64_t>(ns);
}

WorldState sample_initial_state(const ScenarioConfig& config, std::uint64_t episode_seed,
                                SeedNamespace ns) {
  WorldState state;
  state.arena = config.arena;
  state.agent_radius = config.agent_radius;
  state.static_obstacles = config.static_obstacles;
  state.rng = Rng(derive_episode_seed(config.seed, episode_seed, ns));
  Rng& rng = state.rng;

  const double ra = config.agent_radius;
  const double rh = config.human_radius;
  state.agent_pos = draw_until(config, ra, rng,
                               [&](Vec2 p) { return clear_of_statics(config, p, ra); });
  state.agent_goal = draw_until(config, ra, rng, [&](Vec2 p) {
    return (p - state.agent_pos).norm() >= config.min_start_goal_distance &&
           clear_of_statics(config, p, ra);
  });

  state.humans.reserve(config.n_humans);
  for (std::size_t i = 0; i < config.n_humans; ++i) {
    Human h;
    h.radius = rh;
    h.max_speed = config.sim.human_max_speed;
    h.pos = draw_until(config, rh, rng, [&](Vec2 p) {
      if ((p - state.agent_pos).norm() <= ra + rh || !clear_of_statics(config, p, rh)) {
        return false;
      }
      return std::all_of(state.humans.begin(), state.humans.end(),
                         [&](const Human& o) { return (p - o.pos).norm() > rh + o.radius; });
    });
    auto goal = sample_human_goal(state, h.pos, rh, config.sim.human_goal_min_distance, rng);
    if (!goal) {
      throw ScenarioError("scenario too crowded");
    }
    h.goal = *goal;
    state.humans.push_back(h);
  }
  return state;
}

Environment::Environment(ScenarioConfig config) : config_(std::move(config)) {
  config_.validate();
}

Observation Environment::reset(std::uint64_t episode_seed, SeedNamespace ns) {
  state_ = sample_initial_state(config_, episode_seed, ns);
  policy_rng_ = Rng(mix64(derive_episode_seed(config_.seed, episode_seed, ns) ^ 0x706f6c696379ULL));
  active_ = true;
  return_ = 0.0;
  outcome_.reset();
  return observe(state_, config_.sensors);
}

StepResult Environment::step(const Action& action) {
  if (!active_) {
    throw ContractViolation(outcome_ ? "episode has ended; call reset() before step()"
                                     : "step() called before reset()");
  }
  const Vec2 prev = state_.agent_pos;
  step_in_place(state_, action, config_.sim);

  StepResult result;
  if (const auto term = check_termination(state_, config_.goal_radius)) {
    result.reward = terminal_reward(*term, config_.rewards);
    result.terminated = true;
    result.outcome = *term == Termination::kSuccess ? Outcome::kSuccess : Outcome::kCollision;
  } else {
    human_positions_.clear();
    for (const Human& h : state_.humans) {
      human_positions_.push_back(h.pos);
    }
    result.reward = intermediate_reward(prev, state_.agent_pos, state_.agent_goal,
                                        human_positions_, config_.rewards, config_.sim);
    if (state_.step_index >= config_.max_steps) {
      result.truncated = true;
      result.outcome = Outcome::kTruncated;
    }
  }
  result.observation = observe(state_, config_.sensors);
  return_ += result.reward.total;
  if (result.outcome) {
    outcome_ = result.outcome;
    active_ = false;
  }
  return result;
}

void Environment::truncate() {
  if (!active_) {
    throw ContractViolation("truncate() requires an active episode");
  }
  outcome_ = Outcome::kTruncated;
  active_ = false;
}

}  // namespace socnav
