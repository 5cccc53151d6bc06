#pragma once

#include <span>

#include "socnav/geometry.hpp"
#include "socnav/simulator.hpp"

namespace socnav {

struct RewardWeights {
  double w_goal_r = 500.0;
  double w_coll = -500.0;
  double w_step = 5.0;  // magnitude; every step is charged -w_step
  double w_goal_d = 10.0;
  double w_social = -100.0;
  double r_soc_reward = 1.5;  // proximity-penalty radius

  void validate() const;
  bool operator==(const RewardWeights&) const = default;
};

struct RewardBreakdown {
  double r_step = 0.0;
  double r_goal_d = 0.0;
  double r_social = 0.0;
  double r_end = 0.0;
  double total = 0.0;
  bool terminal = false;
  bool operator==(const RewardBreakdown&) const = default;
};

/// Shaped reward for a step that did not end the episode.
///
///   r_step   = -w_step
///   r_goal_d = w_goal_d * <goal_force(prev), displacement / (v_max * dt)>,
///              with the inner product clamped to [-1, 1]
///   r_social = w_social * sum_h max(0, (r_soc_reward - d_h) / r_soc_reward)
///
/// d_h is the center distance from `new_pos` to human h.
RewardBreakdown intermediate_reward(Vec2 prev_pos, Vec2 new_pos, Vec2 goal,
                                    std::span<const Vec2> humans, const RewardWeights& weights,
                                    const SimParams& params);

/// End-of-episode reward; replaces the shaped terms on the final step.
RewardBreakdown terminal_reward(Termination outcome, const RewardWeights& weights);

}  // namespace socnav
