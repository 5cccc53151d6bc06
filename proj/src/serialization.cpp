#include "socnav/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace socnav {

using nlohmann::json;

namespace {

// Walks a JSON object, tracking the dotted path for diagnostics and
// rejecting keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) {
        throw ConfigError(field(key), "expected a number");
      }
      out = v->get<double>();
    }
  }

  template <class Unsigned>
  void count(const std::string& key, Unsigned& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) {
        throw ConfigError(field(key), "expected a non-negative integer");
      }
      out = static_cast<Unsigned>(v->get<std::uint64_t>());
    }
  }

  void vec2(const std::string& key, Vec2& out) {
    if (const json* v = find(key)) {
      out = parse_vec2(*v, field(key));
    }
  }

  static Vec2 parse_vec2(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError(where, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  void finish() const {
    for (const auto& [key, _] : node_.items()) {
      if (!seen_.contains(key)) {
        throw ConfigError(field(key), "unknown field");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

Shape parse_shape(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  const json* type = r.find("type");
  if (!type || !type->is_string()) {
    throw ConfigError(r.field("type"), "expected \"circle\" or \"rect\"");
  }
  Shape shape;
  if (*type == "circle") {
    Circle c;
    r.vec2("center", c.center);
    r.number("radius", c.radius);
    shape = c;
  } else if (*type == "rect") {
    AxisRect rect;
    r.vec2("center", rect.center);
    r.vec2("half_extents", rect.half_extents);
    shape = rect;
  } else {
    throw ConfigError(r.field("type"), "expected \"circle\" or \"rect\"");
  }
  r.finish();
  return shape;
}

json shape_to_json(const Shape& shape) {
  if (const auto* c = std::get_if<Circle>(&shape)) {
    return {{"type", "circle"}, {"center", {c->center.x, c->center.y}}, {"radius", c->radius}};
  }
  const auto& r = std::get<AxisRect>(shape);
  return {{"type", "rect"},
          {"center", {r.center.x, r.center.y}},
          {"half_extents", {r.half_extents.x, r.half_extents.y}}};
}

void parse_sim(const json& node, SimParams& sim) {
  ObjectReader r(node, "sim");
  r.number("dt", sim.dt);
  r.number("agent_max_speed", sim.agent_max_speed);
  r.number("human_max_speed", sim.human_max_speed);
  r.number("d_sat", sim.d_sat);
  r.number("r_soc", sim.r_soc);
  r.number("w_goal", sim.w_goal);
  r.number("w_soc", sim.w_soc);
  r.number("human_goal_radius", sim.human_goal_radius);
  r.number("human_goal_min_distance", sim.human_goal_min_distance);
  r.finish();
}

const char* modality_name(Modality m) {
  switch (m) {
    case Modality::kClosestObstacle: return "closest";
    case Modality::kRaycast: return "raycast";
    case Modality::kLeog: return "leog";
  }
  return "?";
}

constexpr Modality kAllModalities[] = {Modality::kClosestObstacle, Modality::kRaycast,
                                       Modality::kLeog};

void parse_sensors(const json& node, SensorConfig& s) {
  ObjectReader r(node, "sensors");
  if (const json* m = r.find("modalities")) {
    if (!m->is_array()) {
      throw ConfigError("sensors.modalities", "expected a list of modality names");
    }
    ModalitySet set;
    for (const json& name : *m) {
      const auto it = std::find_if(std::begin(kAllModalities), std::end(kAllModalities),
                                   [&](Modality mod) { return name == modality_name(mod); });
      if (it == std::end(kAllModalities)) {
        throw ConfigError("sensors.modalities",
                          "unknown modality " + name.dump() + " (closest, raycast, leog)");
      }
      set.set(*it);
    }
    s.modalities = set;
  }
  if (const json* f = r.find("closest_format")) {
    if (*f == "polar") {
      s.closest_format = CoordinateFormat::kPolar;
    } else if (*f == "cartesian") {
      s.closest_format = CoordinateFormat::kCartesian;
    } else {
      throw ConfigError("sensors.closest_format", "expected \"polar\" or \"cartesian\"");
    }
  }
  r.count("ray_count", s.ray_count);
  r.number("ray_max_range", s.ray_max_range);
  r.number("leog_side", s.leog_side);
  r.number("leog_resolution", s.leog_resolution);
  r.finish();
}

void parse_rewards(const json& node, RewardWeights& w) {
  ObjectReader r(node, "rewards");
  r.number("w_goal_r", w.w_goal_r);
  r.number("w_coll", w.w_coll);
  r.number("w_step", w.w_step);
  r.number("w_goal_d", w.w_goal_d);
  r.number("w_social", w.w_social);
  r.number("r_soc_reward", w.r_soc_reward);
  r.finish();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json window_to_json(const std::vector<WindowStats>& w) {
  json out = json::array();
  for (const WindowStats& s : w) {
    out.push_back({{"mean", s.mean}, {"std", s.stddev}});
  }
  return out;
}

json vec(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ConfigError("", "syntax error at line " + std::to_string(line) + ", column " +
                              std::to_string(column));
  }

  ScenarioConfig config;
  ObjectReader r(doc, "");
  if (const json* v = r.find("version")) {
    if (*v != kConfigVersion) {
      throw ConfigError("version", "unsupported config version " + v->dump());
    }
  }
  if (const json* arena = r.find("arena")) {
    ObjectReader a(*arena, "arena");
    a.number("width", config.arena.x);
    a.number("height", config.arena.y);
    a.finish();
  }
  r.count("n_humans", config.n_humans);
  r.number("agent_radius", config.agent_radius);
  r.number("human_radius", config.human_radius);
  r.number("goal_radius", config.goal_radius);
  r.count("max_steps", config.max_steps);
  r.count("seed", config.seed);
  r.number("min_start_goal_distance", config.min_start_goal_distance);
  if (const json* obstacles = r.find("static_obstacles")) {
    if (!obstacles->is_array()) {
      throw ConfigError("static_obstacles", "expected a list");
    }
    for (std::size_t i = 0; i < obstacles->size(); ++i) {
      config.static_obstacles.push_back(
          parse_shape((*obstacles)[i], "static_obstacles[" + std::to_string(i) + "]"));
    }
  }
  if (const json* sim = r.find("sim")) {
    parse_sim(*sim, config.sim);
  }
  if (const json* sensors = r.find("sensors")) {
    parse_sensors(*sensors, config.sensors);
  }
  if (const json* rewards = r.find("rewards")) {
    parse_rewards(*rewards, config.rewards);
  }
  r.finish();
  config.validate();
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("", "cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

json config_to_json(const ScenarioConfig& c) {
  json modalities = json::array();
  for (Modality m : kAllModalities) {
    if (c.sensors.modalities.has(m)) {
      modalities.push_back(modality_name(m));
    }
  }
  json obstacles = json::array();
  for (const Shape& s : c.static_obstacles) {
    obstacles.push_back(shape_to_json(s));
  }
  return {
      {"version", kConfigVersion},
      {"arena", {{"width", c.arena.x}, {"height", c.arena.y}}},
      {"n_humans", c.n_humans},
      {"agent_radius", c.agent_radius},
      {"human_radius", c.human_radius},
      {"goal_radius", c.goal_radius},
      {"max_steps", c.max_steps},
      {"seed", c.seed},
      {"min_start_goal_distance", c.min_start_goal_distance},
      {"static_obstacles", obstacles},
      {"sim",
       {{"dt", c.sim.dt},
        {"agent_max_speed", c.sim.agent_max_speed},
        {"human_max_speed", c.sim.human_max_speed},
        {"d_sat", c.sim.d_sat},
        {"r_soc", c.sim.r_soc},
        {"w_goal", c.sim.w_goal},
        {"w_soc", c.sim.w_soc},
        {"human_goal_radius", c.sim.human_goal_radius},
        {"human_goal_min_distance", c.sim.human_goal_min_distance}}},
      {"sensors",
       {{"modalities", modalities},
        {"closest_format",
         c.sensors.closest_format == CoordinateFormat::kPolar ? "polar" : "cartesian"},
        {"ray_count", c.sensors.ray_count},
        {"ray_max_range", c.sensors.ray_max_range},
        {"leog_side", c.sensors.leog_side},
        {"leog_resolution", c.sensors.leog_resolution}}},
      {"rewards",
       {{"w_goal_r", c.rewards.w_goal_r},
        {"w_coll", c.rewards.w_coll},
        {"w_step", c.rewards.w_step},
        {"w_goal_d", c.rewards.w_goal_d},
        {"w_social", c.rewards.w_social},
        {"r_soc_reward", c.rewards.r_soc_reward}}},
  };
}

std::string canonical_config_text(const ScenarioConfig& config) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  return config_to_json(config).dump();
}

json snapshot_to_json(const WorldState& s) {
  json humans = json::array();
  for (const Human& h : s.humans) {
    humans.push_back(
        {{"pos", vec(h.pos)}, {"radius", h.radius}, {"goal", vec(h.goal)}, {"max_speed", h.max_speed}});
  }
  json obstacles = json::array();
  for (const Shape& shape : s.static_obstacles) {
    obstacles.push_back(shape_to_json(shape));
  }
  return {{"format", "socnav-world"},
          {"version", kSnapshotVersion},
          {"arena", vec(s.arena)},
          {"agent", {{"pos", vec(s.agent_pos)}, {"radius", s.agent_radius}, {"goal", vec(s.agent_goal)}}},
          {"humans", humans},
          {"static_obstacles", obstacles},
          {"step_index", s.step_index},
          {"rng", s.rng.state()}};
}

WorldState snapshot_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "socnav-world") {
    throw ConfigError("format", "not a world snapshot");
  }
  if (doc.value("version", 0) != kSnapshotVersion) {
    throw ConfigError("version", "unsupported snapshot version");
  }
  try {
    WorldState s;
    s.arena = ObjectReader::parse_vec2(doc.at("arena"), "arena");
    const json& agent = doc.at("agent");
    s.agent_pos = ObjectReader::parse_vec2(agent.at("pos"), "agent.pos");
    s.agent_radius = agent.at("radius").get<double>();
    s.agent_goal = ObjectReader::parse_vec2(agent.at("goal"), "agent.goal");
    for (const json& h : doc.at("humans")) {
      s.humans.push_back({ObjectReader::parse_vec2(h.at("pos"), "humans.pos"),
                          h.at("radius").get<double>(),
                          ObjectReader::parse_vec2(h.at("goal"), "humans.goal"),
                          h.at("max_speed").get<double>()});
    }
    const json& obstacles = doc.at("static_obstacles");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      s.static_obstacles.push_back(
          parse_shape(obstacles[i], "static_obstacles[" + std::to_string(i) + "]"));
    }
    s.step_index = doc.at("step_index").get<std::uint64_t>();
    s.rng = Rng::from_state(doc.at("rng").get<std::string>());
    return s;
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("malformed world snapshot: ") + e.what());
  }
}

json report_to_json(const EvalReport& r) {
  json episodes = json::array();
  for (const EpisodeRecord& e : r.episodes) {
    episodes.push_back({{"seed", e.seed},
                        {"outcome", to_string(e.outcome)},
                        {"steps", e.steps},
                        {"return", e.episode_return}});
  }
  return {{"format", "socnav-eval-report"},
          {"version", kReportVersion},
          {"episodes", r.counts.total()},
          {"seed_base", r.seed_base},
          {"counts",
           {{"success", r.counts.success},
            {"collision", r.counts.collision},
            {"truncated", r.counts.truncated}}},
          {"rates",
           {{"success", r.counts.success_rate()},
            {"collision", r.counts.collision_rate()},
            {"truncated", r.counts.truncated_rate()}}},
          {"window", r.window},
          {"sliding_window",
           {{"success", window_to_json(r.success_window)},
            {"collision", window_to_json(r.collision_window)},
            {"truncated", window_to_json(r.truncated_window)}}},
          {"episode_records", episodes}};
}

json protocol_to_json(const ProtocolReport& p) {
  json checkpoints = json::array();
  for (const CheckpointReport& c : p.checkpoints) {
    checkpoints.push_back({{"index", c.checkpoint.index},
                           {"after_training_episodes", c.checkpoint.after_training_episodes},
                           {"eval_seed_base", c.checkpoint.eval_seed_base},
                           {"report", report_to_json(c.report)}});
  }
  return {{"format", "socnav-protocol-report"},
          {"version", kReportVersion},
          {"checkpoints", checkpoints},
          {"sliding_window",
           {{"success", window_to_json(p.success_window)},
            {"collision", window_to_json(p.collision_window)},
            {"truncated", window_to_json(p.truncated_window)}}}};
}

json observation_to_json(const Observation& obs) {
  json out = {{"goal", {obs.goal.distance, obs.goal.angle}}};
  if (obs.closest) {
    out["closest"] = {(*obs.closest)[0], (*obs.closest)[1]};
  }
  if (obs.raycast) {
    out["raycast"] = *obs.raycast;
  }
  if (obs.leog) {
    out["leog"] = {{"rows", obs.leog->rows}, {"cols", obs.leog->cols}, {"cells", obs.leog->cells}};
  }
  return out;
}

}  // namespace socnav
