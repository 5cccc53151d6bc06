#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "socnav/reward.hpp"
#include "socnav/sensing.hpp"
#include "socnav/simulator.hpp"

namespace socnav {

struct ScenarioConfig {
  Vec2 arena{10.0, 10.0};
  std::size_t n_humans = 5;
  std::vector<Shape> static_obstacles;
  SimParams sim;
  SensorConfig sensors;
  RewardWeights rewards;
  double agent_radius = 0.3;
  double human_radius = 0.3;
  double goal_radius = 0.3;
  std::uint64_t max_steps = 200;
  std::uint64_t seed = 0;
  double min_start_goal_distance = 3.0;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the step/reset protocol is used out of order.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Outcome { kSuccess, kCollision, kTruncated };

const char* to_string(Outcome outcome);

/// Episode seeds live in disjoint namespaces so evaluation episodes can never
/// coincide with training episodes.
enum class SeedNamespace : std::uint64_t { kTraining = 0, kEvaluation = 1 };

/// Generator seed for one episode. The namespace occupies the low bit, which
/// makes the training and evaluation seed sets disjoint.
std::uint64_t derive_episode_seed(std::uint64_t config_seed, std::uint64_t episode_seed,
                                  SeedNamespace ns);

struct StepResult {
  Observation observation;
  RewardBreakdown reward;
  bool terminated = false;
  bool truncated = false;
  std::optional<Outcome> outcome;  // set on the final step only
};

/// Samples the initial world for an episode. Throws ScenarioError("scenario
/// too crowded") when rejection sampling gives up.
WorldState sample_initial_state(const ScenarioConfig& config, std::uint64_t episode_seed,
                                SeedNamespace ns = SeedNamespace::kTraining);

/// One environment instance: reset/step episode lifecycle on top of the
/// simulator, sensors and reward.
class Environment {
 public:
  explicit Environment(ScenarioConfig config);

  Observation reset(std::uint64_t episode_seed, SeedNamespace ns = SeedNamespace::kTraining);

  /// Throws ContractViolation before the first reset or after the episode
  /// has ended.
  StepResult step(const Action& action);

  const ScenarioConfig& config() const { return config_; }
  const WorldState& state() const { return state_; }
  bool active() const { return active_; }
  std::uint64_t steps() const { return state_.step_index; }
  double episode_return() const { return return_; }
  std::optional<Outcome> outcome() const { return outcome_; }

  /// Separate stream for policies that need randomness, so drawing actions
  /// never perturbs the world generator.
  Rng& policy_rng() { return policy_rng_; }

  /// Ends the episode early as truncated (used by step caps outside the
  /// configured max_steps).
  void truncate();

 private:
  ScenarioConfig config_;
  WorldState state_;
  Rng policy_rng_;
  bool active_ = false;
  double return_ = 0.0;
  std::optional<Outcome> outcome_;
  std::vector<Vec2> human_positions_;
};

}  // namespace socnav
