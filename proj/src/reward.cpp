#include "socnav/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace socnav {

void RewardWeights::validate() const {
  for (double w : {w_goal_r, w_coll, w_step, w_goal_d, w_social}) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("rewards.weights must be finite");
    }
  }
  if (w_step < 0.0) {
    throw std::invalid_argument("rewards.w_step is a magnitude and must be >= 0");
  }
  if (!(r_soc_reward > 0.0) || !std::isfinite(r_soc_reward)) {
    throw std::invalid_argument("rewards.r_soc_reward must be a finite value > 0");
  }
}

RewardBreakdown intermediate_reward(Vec2 prev_pos, Vec2 new_pos, Vec2 goal,
                                    std::span<const Vec2> humans, const RewardWeights& weights,
                                    const SimParams& params) {
  RewardBreakdown r;
  r.r_step = -weights.w_step;

  const Vec2 progress = (new_pos - prev_pos) / (params.agent_max_speed * params.dt);
  const double along = std::clamp(dot(goal_force(prev_pos, goal, params.d_sat), progress), -1.0, 1.0);
  r.r_goal_d = weights.w_goal_d * along;

  double proximity = 0.0;
  for (const Vec2& h : humans) {
    const double d = (new_pos - h).norm();
    proximity += std::max(0.0, (weights.r_soc_reward - d) / weights.r_soc_reward);
  }
  r.r_social = weights.w_social * proximity;

  r.total = r.r_step + r.r_goal_d + r.r_social;
  return r;
}

RewardBreakdown terminal_reward(Termination outcome, const RewardWeights& weights) {
  const double reached = outcome == Termination::kSuccess ? 1.0 : 0.0;
  const double collided = outcome == Termination::kCollision ? 1.0 : 0.0;
  RewardBreakdown r;
  r.r_end = weights.w_goal_r * reached + weights.w_coll * collided;
  r.total = r.r_end;
  r.terminal = true;
  return r;
}

}  // namespace socnav
