#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "socnav/episode.hpp"

namespace socnav {

/// Chooses an action from the current observation. The generator is the
/// environment's policy stream.
using Policy = std::function<Action(const Observation&, Rng&)>;

struct ScriptedPolicyTuning {
  double influence = 1.2;   // obstacles nearer than this (from the agent center) repel
  double gain = 1.6;        // repulsion magnitude at contact
  double tangential = 0.9;  // sidestep share, relative to repulsion
};

/// Goal-force attraction plus repulsion from sensed obstacles, clipped into
/// [-1, 1]^2. Uses the raycast when present, else the closest-obstacle
/// reading, else the goal alone.
Action scripted_policy(const Observation& observation, const SimParams& params,
                       CoordinateFormat closest_format = CoordinateFormat::kPolar,
                       const ScriptedPolicyTuning& tuning = {});

/// Both components uniform on [-1, 1].
Action random_policy(Rng& rng);

Policy make_scripted_policy(const ScenarioConfig& config, ScriptedPolicyTuning tuning = {});
Policy make_random_policy();
Policy make_idle_policy();

struct EpisodeRecord {
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::kTruncated;
  std::uint64_t steps = 0;
  double episode_return = 0.0;
  /// Sum of the per-step totals, accumulated independently of the
  /// environment's own running return.
  double reward_sum = 0.0;
};

/// Runs one full episode and returns its record.
EpisodeRecord run_episode(Environment& env, const Policy& policy, std::uint64_t episode_seed,
                          SeedNamespace ns, std::uint64_t step_cap = UINT64_MAX);

struct WindowStats {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Trailing-window mean and standard deviation: one entry per window end
/// from index window-1 onward. A series shorter than `window` yields a
/// single window spanning the whole series; an empty series yields none.
std::vector<WindowStats> sliding_window_stats(std::span<const double> series, std::size_t window);

struct OutcomeCounts {
  std::uint64_t success = 0;
  std::uint64_t collision = 0;
  std::uint64_t truncated = 0;

  std::uint64_t total() const { return success + collision + truncated; }
  double success_rate() const;
  double collision_rate() const;
  double truncated_rate() const;
  void add(Outcome outcome);
};

struct EvalReport {
  std::uint64_t seed_base = 0;
  std::size_t window = 10;
  OutcomeCounts counts;
  std::vector<EpisodeRecord> episodes;
  std::vector<WindowStats> success_window;
  std::vector<WindowStats> collision_window;
  std::vector<WindowStats> truncated_window;
};

/// Evaluates `policy` on `n_episodes` episodes with seeds seed_base + i in
/// the evaluation namespace. `threads` > 1 fans episodes over workers; the
/// report is identical for any thread count.
EvalReport run_evaluation(const Policy& policy, const ScenarioConfig& config,
                          std::size_t n_episodes, std::uint64_t seed_base,
                          std::size_t window = 10, unsigned threads = 1);

/// Train/evaluate cadence: evaluate every `eval_every` training episodes on
/// `eval_episodes` test episodes until `train_episodes` is reached.
struct EvaluationSchedule {
  std::size_t train_episodes = 700;
  std::size_t eval_every = 50;
  std::size_t eval_episodes = 20;
  std::size_t window = 10;

  struct Checkpoint {
    std::size_t index = 0;
    std::size_t after_training_episodes = 0;
    std::uint64_t eval_seed_base = 0;
  };

  void validate() const;
  std::vector<Checkpoint> checkpoints() const;
  std::size_t total_test_episodes() const;
};

struct CheckpointReport {
  EvaluationSchedule::Checkpoint checkpoint;
  EvalReport report;
};

struct ProtocolReport {
  std::vector<CheckpointReport> checkpoints;
  /// Windowed statistics over the concatenated test-episode sequence.
  std::vector<WindowStats> success_window;
  std::vector<WindowStats> collision_window;
  std::vector<WindowStats> truncated_window;
};

/// Called once per training episode, in order, with a training-namespace
/// seed. A learning agent hooks its rollouts and updates in here.
using TrainingHook = std::function<void(Environment&, std::uint64_t episode_seed)>;

ProtocolReport run_protocol(const EvaluationSchedule& schedule, const ScenarioConfig& config,
                            const Policy& eval_policy, const TrainingHook& train = {});

}  // namespace socnav
