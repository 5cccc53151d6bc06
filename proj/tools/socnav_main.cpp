// socnav: run scenarios, evaluate baseline policies and collect LEOG datasets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "socnav/dataset.hpp"
#include "socnav/digest.hpp"
#include "socnav/episode.hpp"
#include "socnav/evaluation.hpp"
#include "socnav/render.hpp"
#include "socnav/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string policy = "scripted";
};

socnav::ScenarioConfig load(const std::string& path) {
  return path.empty() ? socnav::ScenarioConfig{} : socnav::load_config_file(path);
}

socnav::Policy make_policy(const std::string& name, const socnav::ScenarioConfig& config) {
  if (name == "scripted") {
    return socnav::make_scripted_policy(config);
  }
  if (name == "random") {
    return socnav::make_random_policy();
  }
  return socnav::make_idle_policy();
}

std::string frame_name(std::uint64_t index) {
  std::ostringstream name;
  name << "frame_" << std::setw(6) << std::setfill('0') << index << ".ppm";
  return name.str();
}

void write_frame(const socnav::WorldState& state, const socnav::RenderSpec& spec,
                 std::uint64_t index) {
  const fs::path path = spec.output_dir / frame_name(index);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  socnav::render_frame(state, spec, out);
}

struct SimulateOptions {
  std::optional<std::uint64_t> steps;
  std::string render_dir;
  std::uint64_t render_stride = 1;
  double render_scale = 50.0;
  std::string dump_state;
  bool trace = false;
};

int cmd_simulate(const CommonOptions& common, const SimulateOptions& opts) {
  const socnav::ScenarioConfig config = load(common.config_path);
  const socnav::Policy policy = make_policy(common.policy, config);

  std::optional<socnav::RenderSpec> render;
  if (!opts.render_dir.empty()) {
    render = socnav::RenderSpec{opts.render_dir, opts.render_stride, opts.render_scale};
    render->validate();
    fs::create_directories(render->output_dir);
  }

  socnav::Environment env(config);
  socnav::Observation obs = env.reset(common.seed);
  std::uint64_t frames = 0;
  json rewards = json::array();
  const auto maybe_render = [&] {
    if (render && env.steps() % render->stride == 0) {
      write_frame(env.state(), *render, frames++);
    }
  };
  maybe_render();
  const std::uint64_t cap = opts.steps.value_or(UINT64_MAX);
  while (env.active()) {
    if (env.steps() >= cap) {
      env.truncate();
      break;
    }
    socnav::StepResult r = env.step(policy(obs, env.policy_rng()));
    if (opts.trace) {
      rewards.push_back(r.reward.total);
    }
    obs = std::move(r.observation);
    maybe_render();
  }

  if (!opts.dump_state.empty()) {
    std::ofstream out(opts.dump_state);
    out << socnav::snapshot_to_json(env.state()).dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("cannot write state dump to " + opts.dump_state);
    }
  }

  json summary = {{"command", "simulate"},
                  {"seed", common.seed},
                  {"policy", common.policy},
                  {"outcome", socnav::to_string(*env.outcome())},
                  {"steps", env.steps()},
                  {"return", env.episode_return()},
                  {"frames", frames}};
  if (opts.trace) {
    summary["rewards"] = rewards;
  }
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_collect(const CommonOptions& common, std::uint64_t samples, const std::string& out_path) {
  const socnav::ScenarioConfig config = load(common.config_path);
  std::uint64_t written = 0;
  {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + out_path + " for writing");
    }
    written = socnav::collect(config, samples, common.seed, out);
  }
  std::ifstream in(out_path, std::ios::binary);
  const socnav::Sha256 digest = socnav::sha256(in);
  std::cout << json{{"command", "collect"},
                    {"samples", written},
                    {"bytes", fs::file_size(out_path)},
                    {"sha256", socnav::to_hex(digest)}}
                   .dump()
            << '\n';
  return 0;
}

struct EvaluateOptions {
  std::size_t episodes = 20;
  std::string report_path;
  std::size_t window = 10;
  unsigned threads = 1;
  bool protocol = false;
};

int cmd_evaluate(const CommonOptions& common, const EvaluateOptions& opts) {
  const socnav::ScenarioConfig config = load(common.config_path);
  const socnav::Policy policy = make_policy(common.policy, config);

  json doc;
  socnav::OutcomeCounts totals;
  if (opts.protocol) {
    socnav::EvaluationSchedule schedule;
    schedule.eval_episodes = opts.episodes;
    schedule.window = opts.window;
    const socnav::ProtocolReport report = socnav::run_protocol(schedule, config, policy);
    for (const auto& cp : report.checkpoints) {
      totals.success += cp.report.counts.success;
      totals.collision += cp.report.counts.collision;
      totals.truncated += cp.report.counts.truncated;
    }
    doc = socnav::protocol_to_json(report);
  } else {
    const unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                               : opts.threads;
    const socnav::EvalReport report =
        socnav::run_evaluation(policy, config, opts.episodes, common.seed, opts.window, threads);
    totals = report.counts;
    doc = socnav::report_to_json(report);
  }
  doc["policy"] = common.policy;

  if (!opts.report_path.empty()) {
    std::ofstream out(opts.report_path);
    out << doc.dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("cannot write report to " + opts.report_path);
    }
  }
  std::cout << json{{"command", "evaluate"},
                    {"episodes", totals.total()},
                    {"success_rate", totals.success_rate()},
                    {"collision_rate", totals.collision_rate()},
                    {"truncated_rate", totals.truncated_rate()},
                    {"counts",
                     {{"success", totals.success},
                      {"collision", totals.collision},
                      {"truncated", totals.truncated}}}}
                   .dump()
            << '\n';
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_policy) {
  cmd->add_option("--config", common.config_path, "Scenario config (JSON); defaults when omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", common.seed, "Seed (episode seed, or evaluation seed base)");
  if (with_policy) {
    cmd->add_option("--policy", common.policy, "Action chooser")
        ->check(CLI::IsMember({"scripted", "random", "idle"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-navigation simulator and environment tools"};
  app.require_subcommand(1);

  CommonOptions sim_common, collect_common, eval_common;
  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Run one episode and print its summary");
  add_common(simulate, sim_common, true);
  simulate->add_option("--steps", sim_opts.steps, "Step cap (truncates when reached)");
  simulate->add_option("--render-dir", sim_opts.render_dir, "Write P6 frames into this directory");
  simulate->add_option("--render-stride", sim_opts.render_stride, "Render every N-th step")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--render-scale", sim_opts.render_scale, "Pixels per meter")
      ->check(CLI::Range(1.0, 1000.0));
  simulate->add_option("--dump-state", sim_opts.dump_state, "Write the final world snapshot");
  simulate->add_flag("--trace", sim_opts.trace, "Include per-step reward totals in the summary");

  std::uint64_t samples = 50'000;
  std::string out_path;
  auto* collect = app.add_subcommand("collect", "Collect a random-policy LEOG dataset (OSGD)");
  add_common(collect, collect_common, false);
  collect->add_option("--samples", samples, "Number of grids")->check(CLI::PositiveNumber);
  collect->add_option("--out", out_path, "Output file")->required();

  EvaluateOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a baseline policy");
  add_common(evaluate, eval_common, true);
  evaluate->add_option("--episodes", eval_opts.episodes, "Test episodes (per checkpoint with --protocol)")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--report", eval_opts.report_path, "Write the JSON report here");
  evaluate->add_option("--window", eval_opts.window, "Sliding-window length")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--threads", eval_opts.threads, "Worker threads (0 = all cores)");
  evaluate->add_flag("--protocol", eval_opts.protocol,
                     "Run the full checkpoint schedule (every 50 of 700 training episodes)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(sim_common, sim_opts);
    }
    if (collect->parsed()) {
      return cmd_collect(collect_common, samples, out_path);
    }
    return cmd_evaluate(eval_common, eval_opts);
  } catch (const socnav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
