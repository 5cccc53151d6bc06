#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "socnav/evaluation.hpp"

using namespace socnav;

namespace {

Observation goal_only(double distance, double angle) {
  Observation o;
  o.goal = {distance, angle};
  return o;
}

ScenarioConfig empty_arena() {
  ScenarioConfig c;
  c.n_humans = 0;
  return c;
}

}  // namespace

TEST_CASE("outcome rates over [S, S, C, T]") {
  OutcomeCounts c;
  for (Outcome o : {Outcome::kSuccess, Outcome::kSuccess, Outcome::kCollision, Outcome::kTruncated}) {
    c.add(o);
  }
  CHECK(c.total() == 4);
  CHECK(c.success_rate() == 0.5);
  CHECK(c.collision_rate() == 0.25);
  CHECK(c.truncated_rate() == 0.25);
  CHECK(c.success + c.collision + c.truncated == c.total());
}

TEST_CASE("an idle policy in an empty arena is always truncated") {
  const EvalReport r = run_evaluation(make_idle_policy(), empty_arena(), 20, 0);
  CHECK(r.counts.total() == 20);
  CHECK(r.counts.truncated_rate() == 1.0);
  for (const EpisodeRecord& e : r.episodes) {
    CHECK(e.steps == 200);
    CHECK(e.outcome == Outcome::kTruncated);
  }
}

TEST_CASE("scripted policy examples") {
  const SimParams p;
  const Action east = scripted_policy(goal_only(5, 0), p);
  CHECK(east.vx() == 1.0);
  CHECK(east.vy() == 0.0);

  const Action still = scripted_policy(goal_only(0, 0), p);
  CHECK(still.vx() == 0.0);
  CHECK(still.vy() == 0.0);

  Observation blocked = goal_only(5, 0);
  blocked.closest = std::array<double, 2>{0.4, 0.0};
  const Action a = scripted_policy(blocked, p);
  CHECK(a.vx() < 1.0);

  Observation rays = goal_only(5, 0);
  rays.raycast = std::vector<double>(360, 5.0);
  for (int k = -10; k <= 10; ++k) (*rays.raycast)[(360 + k) % 360] = 0.4;
  const Action b = scripted_policy(rays, p);
  CHECK(b.vx() < 1.0);
  CHECK(std::abs(b.vy()) > 0.0);  // sidesteps around the blockage
}

TEST_CASE("random policy: bounded, reproducible, centred") {
  Rng a(42);
  Rng b(42);
  double sx = 0.0;
  double sy = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const Action x = random_policy(a);
    const Action y = random_policy(b);
    CHECK_FALSE((x.vx() != y.vx() || x.vy() != y.vy()));
    if (std::abs(x.vx()) > 1.0 || std::abs(x.vy()) > 1.0) FAIL("out of range");
    sx += x.vx();
    sy += x.vy();
  }
  CHECK(std::abs(sx / n) < 0.02);
  CHECK(std::abs(sy / n) < 0.02);
}

TEST_CASE("evaluation schedule") {
  const EvaluationSchedule s;
  const auto cps = s.checkpoints();
  REQUIRE(cps.size() == 14);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    CHECK(cps[i].after_training_episodes == 50 * (i + 1));
  }
  CHECK(cps.back().after_training_episodes == 700);
  CHECK(s.total_test_episodes() == 280);
  CHECK(s.window == 10);
  EvaluationSchedule bad;
  bad.eval_every = 0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("sliding window statistics") {
  const std::vector<double> series{1, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 1};
  const auto w = sliding_window_stats(series, 10);
  REQUIRE(w.size() == 3);
  CHECK(w[0].mean == doctest::Approx(0.7));
  CHECK(w[0].stddev == doctest::Approx(std::sqrt(0.21)));
  CHECK(w[2].mean == doctest::Approx(0.7));
  const auto whole = sliding_window_stats(std::span(series).first(4), 10);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].mean == 0.75);
  CHECK(sliding_window_stats({}, 10).empty());
  const std::vector<double> flat(15, 1.0);
  for (const auto& s : sliding_window_stats(flat, 10)) CHECK(s.stddev == 0.0);
}

TEST_CASE("report is independent of the worker count") {
  ScenarioConfig c;
  const Policy p = make_scripted_policy(c);
  const EvalReport one = run_evaluation(p, c, 24, 100, 10, 1);
  const EvalReport four = run_evaluation(p, c, 24, 100, 10, 4);
  REQUIRE(one.episodes.size() == four.episodes.size());
  for (std::size_t i = 0; i < one.episodes.size(); ++i) {
    CHECK(one.episodes[i].seed == four.episodes[i].seed);
    CHECK(one.episodes[i].outcome == four.episodes[i].outcome);
    CHECK(one.episodes[i].steps == four.episodes[i].steps);
    CHECK(one.episodes[i].episode_return == four.episodes[i].episode_return);
  }
  CHECK(one.counts.success == four.counts.success);
  CHECK(one.success_window.size() == 15);
}

TEST_CASE("random episodes: return equals the per-step sum, rates sum to one") {
  ScenarioConfig c;
  c.static_obstacles.push_back(Circle{{5, 5}, 1.0});
  const EvalReport r = run_evaluation(make_random_policy(), c, 40, 7);
  for (const EpisodeRecord& e : r.episodes) {
    CHECK(e.episode_return == e.reward_sum);
  }
  CHECK(r.counts.success + r.counts.collision + r.counts.truncated == 40);
}

TEST_CASE("scripted policy reaches the goal in an empty arena") {
  const ScenarioConfig c = empty_arena();
  const EvalReport r = run_evaluation(make_scripted_policy(c), c, 30, 0);
  CHECK(r.counts.success_rate() >= 0.95);
}

TEST_CASE("protocol runs training hooks in order and evaluates on disjoint seeds") {
  EvaluationSchedule s;
  s.train_episodes = 6;
  s.eval_every = 3;
  s.eval_episodes = 2;
  s.window = 2;
  std::vector<std::uint64_t> trained;
  const ScenarioConfig c = empty_arena();
  const ProtocolReport r = run_protocol(s, c, make_idle_policy(),
                                        [&](Environment&, std::uint64_t seed) { trained.push_back(seed); });
  CHECK(trained == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
  REQUIRE(r.checkpoints.size() == 2);
  CHECK(r.checkpoints[0].report.episodes.size() == 2);
  CHECK(r.checkpoints[1].checkpoint.eval_seed_base == 2);
  CHECK(r.success_window.size() == 3);
}
