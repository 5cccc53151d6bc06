#include <doctest.h>

#include <string>

#include "socnav/serialization.hpp"

using namespace socnav;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("empty document yields the defaults") {
  CHECK(parse_config("{}") == ScenarioConfig{});
}

TEST_CASE("config round-trips through JSON") {
  ScenarioConfig c;
  c.arena = {12.5, 8};
  c.n_humans = 3;
  c.seed = 0xdeadbeefcafeULL;
  c.max_steps = 321;
  c.static_obstacles.push_back(Circle{{3, 3}, 0.7});
  c.static_obstacles.push_back(AxisRect{{9, 4}, {1.25, 0.5}});
  c.sim.dt = 0.05;
  c.sim.r_soc = 1.1;
  c.sensors.modalities = ModalitySet{Modality::kRaycast, Modality::kClosestObstacle};
  c.sensors.closest_format = CoordinateFormat::kCartesian;
  c.sensors.ray_count = 64;
  c.rewards.w_social = -12.75;
  c.rewards.w_goal_d = 0.1;
  const std::string text = config_to_json(c).dump();
  const ScenarioConfig back = parse_config(text);
  CHECK(back == c);
  CHECK(canonical_config_text(back) == canonical_config_text(c));
  CHECK(config_to_json(back).dump() == text);
}

TEST_CASE("canonical text is insensitive to key order and whitespace") {
  const ScenarioConfig a = parse_config(R"({"n_humans": 2, "seed": 9})");
  const ScenarioConfig b = parse_config("{\n  \"seed\":9,\"n_humans\":2 }");
  CHECK(canonical_config_text(a) == canonical_config_text(b));
  CHECK_FALSE(canonical_config_text(a) == canonical_config_text(ScenarioConfig{}));
}

TEST_CASE("errors name the offending field") {
  CHECK(field_of(R"({"n_humen": 3})") == "n_humen");
  CHECK(field_of(R"({"sim": {"dt": 0}})") == "sim.dt");
  CHECK(field_of(R"({"sim": {"speed": 1}})") == "sim.speed");
  CHECK(field_of(R"({"sensors": {"ray_count": 2}})") == "sensors.ray_count");
  CHECK(field_of(R"({"sensors": {"modalities": ["sonar"]}})").rfind("sensors.modalities", 0) == 0);
  CHECK(field_of(R"({"n_humans": -1})") == "n_humans");
  CHECK(field_of(R"({"static_obstacles": [{"type": "circle", "center": [1, 1], "radius": -2}]})") ==
        "static_obstacles[0]");
  CHECK(field_of(R"({"static_obstacles": [{"type": "blob"}]})") == "static_obstacles[0].type");
  CHECK(field_of(R"({"arena": {"width": 10, "height": 10, "depth": 3}})") == "arena.depth");
  CHECK(field_of(R"({"version": 7})") == "version");
}

TEST_CASE("syntax errors report line and column") {
  try {
    parse_config("{\n  \"n_humans\": 3,\n  \"seed\": ]\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field().empty());
    CHECK(std::string(e.what()).find("line 3, column 11") != std::string::npos);
  }
}

TEST_CASE("snapshot round-trips bit-exactly including the generator state") {
  WorldState s;
  s.agent_pos = {0.1 + 0.2, 1.0 / 3.0};
  s.agent_goal = {7.123456789012345, 2};
  s.humans.push_back({{1, 2}, 0.3, {4, 5}, 1.0});
  s.static_obstacles.push_back(AxisRect{{5, 5}, {1, 2}});
  s.rng = Rng(12345);
  s.rng.next_u64();
  s.step_index = 17;
  const WorldState back = snapshot_from_json(nlohmann::json::parse(snapshot_to_json(s).dump()));
  CHECK(back == s);
  CHECK(back.rng == s.rng);
}

TEST_CASE("report JSON carries counts, rates and windows") {
  EvalReport r;
  r.window = 2;
  for (Outcome o : {Outcome::kSuccess, Outcome::kCollision, Outcome::kSuccess}) {
    r.counts.add(o);
    r.episodes.push_back({r.episodes.size(), o, 10, 1.0, 1.0});
  }
  r.success_window = {{0.5, 0.5}, {0.5, 0.5}};
  const auto doc = report_to_json(r);
  CHECK(doc["counts"]["success"] == 2);
  CHECK(doc["rates"]["collision"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(doc["episode_records"].size() == 3);
  CHECK(doc["sliding_window"]["success"].size() == 2);
}
