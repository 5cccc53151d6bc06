#include "socnav/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace socnav {

Action scripted_policy(const Observation& observation, const SimParams& params,
                       CoordinateFormat closest_format, const ScriptedPolicyTuning& tuning) {
  const GoalObservation& goal = observation.goal;
  const Vec2 goal_offset{goal.distance * std::cos(goal.angle), goal.distance * std::sin(goal.angle)};
  const Vec2 attract = goal.distance == 0.0 ? Vec2{} : goal_force({}, goal_offset, params.d_sat);

  // Direction toward the sensed obstacle mass and proximity weight in [0, 1].
  Vec2 toward;
  double proximity = 0.0;
  if (observation.raycast) {
    const auto& rays = *observation.raycast;
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (rays[k] < tuning.influence) {
        const double w = (tuning.influence - rays[k]) / tuning.influence;
        toward += ray_direction(k, rays.size()) * w;
        weight_sum += w;
        proximity = std::max(proximity, w);
      }
    }
    if (weight_sum > 0.0) {
      toward = toward / weight_sum;
    }
  } else if (observation.closest) {
    const auto [a, b] = *observation.closest;
    const Vec2 offset = closest_format == CoordinateFormat::kPolar
                            ? Vec2{std::cos(b), std::sin(b)} * std::max(a, 0.0)
                            : Vec2{a, b};
    const double d = closest_format == CoordinateFormat::kPolar ? a : offset.norm();
    if (d < tuning.influence) {
      proximity = (tuning.influence - std::max(d, 0.0)) / tuning.influence;
      toward = offset.norm() > 0.0 ? offset / offset.norm() : Vec2{1.0, 0.0};
    }
  }

  Vec2 command = attract;
  const double n = toward.norm();
  if (proximity > 0.0 && n > 0.0) {
    const Vec2 away = -toward / n;
    const Vec2 repel = away * (tuning.gain * proximity);
    command += repel;
    if (dot(away, attract) < 0.0) {
      // Obstacle sits between agent and goal: slide around it on the goal side.
      Vec2 side{-away.y, away.x};
      if (dot(side, attract) < 0.0) {
        side = -side;
      }
      command += side * (tuning.tangential * tuning.gain * proximity);
    }
  }
  const double scale = std::max({std::abs(command.x), std::abs(command.y), 1.0});
  return Action(command.x / scale, command.y / scale);
}

Action random_policy(Rng& rng) {
  const double vx = rng.uniform(-1.0, 1.0);
  const double vy = rng.uniform(-1.0, 1.0);
  return Action(vx, vy);
}

Policy make_scripted_policy(const ScenarioConfig& config, ScriptedPolicyTuning tuning) {
  return [params = config.sim, format = config.sensors.closest_format, tuning](
             const Observation& obs, Rng&) { return scripted_policy(obs, params, format, tuning); };
}

Policy make_random_policy() {
  return [](const Observation&, Rng& rng) { return random_policy(rng); };
}

Policy make_idle_policy() {
  return [](const Observation&, Rng&) { return Action(0.0, 0.0); };
}

EpisodeRecord run_episode(Environment& env, const Policy& policy, std::uint64_t episode_seed,
                          SeedNamespace ns, std::uint64_t step_cap) {
  EpisodeRecord record;
  record.seed = episode_seed;
  Observation obs = env.reset(episode_seed, ns);
  while (env.active()) {
    if (env.steps() >= step_cap) {
      env.truncate();
      break;
    }
    StepResult result = env.step(policy(obs, env.policy_rng()));
    record.reward_sum += result.reward.total;
    obs = std::move(result.observation);
  }
  record.outcome = *env.outcome();
  record.steps = env.steps();
  record.episode_return = env.episode_return();
  return record;
}

std::vector<WindowStats> sliding_window_stats(std::span<const double> series, std::size_t window) {
  if (window == 0) {
    throw std::invalid_argument("window must be >= 1");
  }
  std::vector<WindowStats> out;
  if (series.empty()) {
    return out;
  }
  const std::size_t w = std::min(window, series.size());
  for (std::size_t end = w; end <= series.size(); ++end) {
    const auto slice = series.subspan(end - w, w);
    double mean = 0.0;
    for (double v : slice) {
      mean += v;
    }
    mean /= static_cast<double>(w);
    double var = 0.0;
    for (double v : slice) {
      var += (v - mean) * (v - mean);
    }
    out.push_back({mean, std::sqrt(var / static_cast<double>(w))});
  }
  return out;
}

namespace {

double ratio(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

struct OutcomeSeries {
  std::vector<double> success;
  std::vector<double> collision;
  std::vector<double> truncated;

  void add(Outcome o) {
    success.push_back(o == Outcome::kSuccess ? 1.0 : 0.0);
    collision.push_back(o == Outcome::kCollision ? 1.0 : 0.0);
    truncated.push_back(o == Outcome::kTruncated ? 1.0 : 0.0);
  }
};

}  // namespace

double OutcomeCounts::success_rate() const { return ratio(success, total()); }
double OutcomeCounts::collision_rate() const { return ratio(collision, total()); }
double OutcomeCounts::truncated_rate() const { return ratio(truncated, total()); }

void OutcomeCounts::add(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess: ++success; break;
    case Outcome::kCollision: ++collision; break;
    case Outcome::kTruncated: ++truncated; break;
  }
}

EvalReport run_evaluation(const Policy& policy, const ScenarioConfig& config,
                          std::size_t n_episodes, std::uint64_t seed_base, std::size_t window,
                          unsigned threads) {
  if (n_episodes == 0) {
    throw std::invalid_argument("n_episodes must be >= 1");
  }
  EvalReport report;
  report.seed_base = seed_base;
  report.window = window;
  report.episodes.resize(n_episodes);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    Environment env(config);
    for (std::size_t i = next++; i < n_episodes; i = next++) {
      report.episodes[i] = run_episode(env, policy, seed_base + i, SeedNamespace::kEvaluation);
    }
  };
  const unsigned n_threads = std::max(1U, std::min<unsigned>(threads, n_episodes));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  OutcomeSeries series;
  for (const EpisodeRecord& e : report.episodes) {
    report.counts.add(e.outcome);
    series.add(e.outcome);
  }
  report.success_window = sliding_window_stats(series.success, window);
  report.collision_window = sliding_window_stats(series.collision, window);
  report.truncated_window = sliding_window_stats(series.truncated, window);
  return report;
}

void EvaluationSchedule::validate() const {
  if (eval_every == 0 || eval_episodes == 0 || window == 0 || train_episodes < eval_every) {
    throw std::invalid_argument(
        "schedule needs eval_every, eval_episodes, window >= 1 and train_episodes >= eval_every");
  }
}

std::vector<EvaluationSchedule::Checkpoint> EvaluationSchedule::checkpoints() const {
  validate();
  std::vector<Checkpoint> out;
  for (std::size_t after = eval_every; after <= train_episodes; after += eval_every) {
    const std::size_t index = out.size();
    out.push_back({index, after, static_cast<std::uint64_t>(index * eval_episodes)});
  }
  return out;
}

std::size_t EvaluationSchedule::total_test_episodes() const {
  return (train_episodes / eval_every) * eval_episodes;
}

ProtocolReport run_protocol(const EvaluationSchedule& schedule, const ScenarioConfig& config,
                            const Policy& eval_policy, const TrainingHook& train) {
  ProtocolReport out;
  Environment train_env(config);
  std::uint64_t train_seed = 0;
  std::size_t trained = 0;
  OutcomeSeries series;
  for (const auto& cp : schedule.checkpoints()) {
    for (; trained < cp.after_training_episodes; ++trained, ++train_seed) {
      if (train) {
        train(train_env, train_seed);
      } else {
        run_episode(train_env, eval_policy, train_seed, SeedNamespace::kTraining);
      }
    }
    CheckpointReport entry{cp, run_evaluation(eval_policy, config, schedule.eval_episodes,
                                              cp.eval_seed_base, schedule.window)};
    for (const EpisodeRecord& e : entry.report.episodes) {
      series.add(e.outcome);
    }
    out.checkpoints.push_back(std::move(entry));
  }
  out.success_window = sliding_window_stats(series.success, schedule.window);
  out.collision_window = sliding_window_stats(series.collision, schedule.window);
  out.truncated_window = sliding_window_stats(series.truncated, schedule.window);
  return out;
}

}  // namespace socnav
