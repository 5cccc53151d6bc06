#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "socnav/dataset.hpp"
#include "socnav/episode.hpp"
#include "socnav/evaluation.hpp"
#include "socnav/render.hpp"
#include "socnav/serialization.hpp"

namespace py = pybind11;

namespace {

py::dict observation_dict(const socnav::Observation& obs) {
  py::dict out;
  if (obs.closest) {
    py::array_t<double> a(2);
    a.mutable_at(0) = (*obs.closest)[0];
    a.mutable_at(1) = (*obs.closest)[1];
    out["closest"] = a;
  }
  if (obs.raycast) {
    py::array_t<double> a(static_cast<py::ssize_t>(obs.raycast->size()));
    std::copy(obs.raycast->begin(), obs.raycast->end(), a.mutable_data());
    out["raycast"] = a;
  }
  if (obs.leog) {
    py::array_t<std::uint8_t> a({static_cast<py::ssize_t>(obs.leog->rows),
                                 static_cast<py::ssize_t>(obs.leog->cols)});
    std::copy(obs.leog->cells.begin(), obs.leog->cells.end(), a.mutable_data());
    out["leog"] = a;
  }
  py::array_t<double> goal(2);
  goal.mutable_at(0) = obs.goal.distance;
  goal.mutable_at(1) = obs.goal.angle;
  out["goal"] = goal;
  return out;
}

py::dict breakdown_dict(const socnav::RewardBreakdown& r) {
  py::dict d;
  d["r_step"] = r.r_step;
  d["r_goal_d"] = r.r_goal_d;
  d["r_social"] = r.r_social;
  d["r_end"] = r.r_end;
  d["total"] = r.total;
  d["terminal"] = r.terminal;
  return d;
}

py::object json_to_py(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

socnav::Action to_action(py::sequence action) {
  if (py::len(action) != 2) {
    throw py::value_error("action must have exactly 2 components");
  }
  const double vx = action[0].cast<double>();
  const double vy = action[1].cast<double>();
  if (!std::isfinite(vx) || !std::isfinite(vy)) {
    throw py::value_error("action components must be finite");
  }
  return socnav::Action(vx, vy);
}

class PyEnv {
 public:
  explicit PyEnv(const std::string& config_text)
      : env_(socnav::parse_config(config_text)) {}

  py::tuple reset(std::uint64_t seed, bool evaluation) {
    const auto ns = evaluation ? socnav::SeedNamespace::kEvaluation : socnav::SeedNamespace::kTraining;
    const socnav::Observation obs = env_.reset(seed, ns);
    py::dict info;
    info["step"] = env_.steps();
    return py::make_tuple(observation_dict(obs), info);
  }

  py::tuple step(py::sequence action) {
    const socnav::StepResult r = env_.step(to_action(action));
    py::dict info;
    info["reward"] = breakdown_dict(r.reward);
    info["outcome"] = r.outcome ? py::cast(socnav::to_string(*r.outcome)) : py::none();
    info["step"] = env_.steps();
    return py::make_tuple(observation_dict(r.observation), r.reward.total, r.terminated,
                          r.truncated, info);
  }

  py::dict observation_shapes() const {
    const auto& s = env_.config().sensors;
    py::dict out;
    if (s.modalities.has(socnav::Modality::kClosestObstacle)) {
      out["closest"] = py::make_tuple(2);
    }
    if (s.modalities.has(socnav::Modality::kRaycast)) {
      out["raycast"] = py::make_tuple(s.ray_count);
    }
    if (s.modalities.has(socnav::Modality::kLeog)) {
      out["leog"] = py::make_tuple(s.leog_cells(), s.leog_cells());
    }
    out["goal"] = py::make_tuple(2);
    return out;
  }

  std::string state_json() const { return socnav::snapshot_to_json(env_.state()).dump(); }
  std::string config_json() const { return socnav::config_to_json(env_.config()).dump(); }

  py::bytes render(double pixels_per_meter) const {
    std::ostringstream out;
    socnav::render_frame(env_.state(), socnav::RenderSpec{{}, 1, pixels_per_meter}, out);
    return py::bytes(out.str());
  }

  py::tuple scripted_action() const {
    // Uses the engine-side observation so the policy sees exact values.
    const socnav::Observation obs = socnav::observe(env_.state(), env_.config().sensors);
    const socnav::Action a = socnav::scripted_policy(obs, env_.config().sim,
                                                     env_.config().sensors.closest_format);
    return py::make_tuple(a.vx(), a.vy());
  }

  py::tuple random_action() {
    const socnav::Action a = socnav::random_policy(env_.policy_rng());
    return py::make_tuple(a.vx(), a.vy());
  }

  bool active() const { return env_.active(); }
  std::uint64_t steps() const { return env_.steps(); }
  double episode_return() const { return env_.episode_return(); }

 private:
  socnav::Environment env_;
};

class PyDatasetReader {
 public:
  explicit PyDatasetReader(const std::string& path)
      : file_(std::make_unique<std::ifstream>(path, std::ios::binary)) {
    if (!*file_) {
      throw socnav::DatasetError("cannot open " + path);
    }
    reader_ = std::make_unique<socnav::GridDatasetReader>(*file_);
  }

  py::dict header() const {
    const auto& h = reader_->header();
    py::dict d;
    d["version"] = h.version;
    d["rows"] = h.rows;
    d["cols"] = h.cols;
    d["sample_count"] = h.sample_count;
    d["config_digest"] = socnav::to_hex(h.config_digest);
    return d;
  }

  py::array_t<std::uint8_t> next() {
    if (!reader_->next(buffer_)) {
      throw py::stop_iteration();
    }
    const auto& h = reader_->header();
    py::array_t<std::uint8_t> a({static_cast<py::ssize_t>(h.rows), static_cast<py::ssize_t>(h.cols)});
    std::copy(buffer_.begin(), buffer_.end(), a.mutable_data());
    return a;
  }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::unique_ptr<socnav::GridDatasetReader> reader_;
  std::vector<std::uint8_t> buffer_;
};

socnav::Policy policy_by_name(const std::string& name, const socnav::ScenarioConfig& config) {
  if (name == "scripted") return socnav::make_scripted_policy(config);
  if (name == "random") return socnav::make_random_policy();
  if (name == "idle") return socnav::make_idle_policy();
  throw py::value_error("policy must be one of: scripted, random, idle");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Social-navigation simulation engine";

  py::register_exception<socnav::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<socnav::ContractViolation>(m, "EpisodeFinishedError", PyExc_RuntimeError);
  py::register_exception<socnav::ScenarioError>(m, "ScenarioError", PyExc_RuntimeError);
  py::register_exception<socnav::DatasetError>(m, "DatasetError", PyExc_RuntimeError);

  py::class_<PyEnv>(m, "Env")
      .def(py::init<const std::string&>(), py::arg("config_text") = "{}")
      .def("reset", &PyEnv::reset, py::arg("seed") = 0, py::arg("evaluation") = false)
      .def("step", &PyEnv::step, py::arg("action"))
      .def_property_readonly("observation_shapes", &PyEnv::observation_shapes)
      .def_property_readonly("active", &PyEnv::active)
      .def_property_readonly("steps", &PyEnv::steps)
      .def_property_readonly("episode_return", &PyEnv::episode_return)
      .def("state_json", &PyEnv::state_json)
      .def("config_json", &PyEnv::config_json)
      .def("render", &PyEnv::render, py::arg("pixels_per_meter") = 50.0)
      .def("scripted_action", &PyEnv::scripted_action)
      .def("random_action", &PyEnv::random_action);

  py::class_<PyDatasetReader>(m, "DatasetReader")
      .def(py::init<const std::string&>(), py::arg("path"))
      .def_property_readonly("header", &PyDatasetReader::header)
      .def("__iter__", [](PyDatasetReader& self) -> PyDatasetReader& { return self; })
      .def("__next__", &PyDatasetReader::next);

  m.def(
      "collect_dataset",
      [](const std::string& config_text, std::uint64_t samples, std::uint64_t seed,
         const std::string& path) {
        const socnav::ScenarioConfig config = socnav::parse_config(config_text);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
          throw socnav::DatasetError("cannot open " + path + " for writing");
        }
        py::gil_scoped_release release;
        return socnav::collect(config, samples, seed, out);
      },
      py::arg("config_text"), py::arg("samples"), py::arg("seed"), py::arg("path"));

  m.def(
      "evaluate",
      [](const std::string& config_text, const std::string& policy, std::size_t episodes,
         std::uint64_t seed_base, std::size_t window) {
        const socnav::ScenarioConfig config = socnav::parse_config(config_text);
        const socnav::Policy p = policy_by_name(policy, config);
        socnav::EvalReport report;
        {
          py::gil_scoped_release release;
          report = socnav::run_evaluation(p, config, episodes, seed_base, window);
        }
        return json_to_py(socnav::report_to_json(report));
      },
      py::arg("config_text"), py::arg("policy") = "scripted", py::arg("episodes") = 20,
      py::arg("seed_base") = 0, py::arg("window") = 10);

  m.def("default_config_json", [] { return socnav::config_to_json(socnav::ScenarioConfig{}).dump(); });

  m.def(
      "derive_episode_seed",
      [](std::uint64_t config_seed, std::uint64_t episode_seed, bool evaluation) {
        return socnav::derive_episode_seed(
            config_seed, episode_seed,
            evaluation ? socnav::SeedNamespace::kEvaluation : socnav::SeedNamespace::kTraining);
      },
      py::arg("config_seed"), py::arg("episode_seed"), py::arg("evaluation") = false);

  m.def(
      "goal_force",
      [](std::pair<double, double> pos, std::pair<double, double> goal, double d_sat) {
        const socnav::Vec2 f = socnav::goal_force({pos.first, pos.second}, {goal.first, goal.second}, d_sat);
        return std::pair{f.x, f.y};
      },
      py::arg("pos"), py::arg("goal"), py::arg("d_sat") = 1.0);

  m.def(
      "social_force",
      [](std::pair<double, double> subject, const std::vector<std::pair<double, double>>& others,
         double r_soc) {
        std::vector<socnav::Vec2> pts;
        for (const auto& [x, y] : others) pts.push_back({x, y});
        const socnav::Vec2 f = socnav::social_force({subject.first, subject.second}, pts, r_soc);
        return std::pair{f.x, f.y};
      },
      py::arg("subject"), py::arg("others"), py::arg("r_soc") = 1.5);
}
