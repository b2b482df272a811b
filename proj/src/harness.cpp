#include "covplan/harness.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace covplan {

namespace fs = std::filesystem;

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string text = serialize_config(config);
  return fnv1a64(text.data(), text.size());
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hex_hash(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

TrainOutputs cmd_train(const ExperimentConfig& config, const std::string& out_dir,
                       bool dump_q_csv) {
  fs::create_directories(out_dir);

  const TrainResult result = train(config.env, config.learner);

  TrainOutputs outputs;
  outputs.qtable_path = (fs::path(out_dir) / "qtable.bin").string();
  outputs.curve_path = (fs::path(out_dir) / "curve.csv").string();
  outputs.manifest_path = (fs::path(out_dir) / "manifest.json").string();

  const std::uint64_t hash = config_hash(config);
  save_qtable(result.q, outputs.qtable_path, hash);
  write_curve_csv(result.curve, outputs.curve_path);
  if (dump_q_csv) {
    dump_qtable_csv(result.q, (fs::path(out_dir) / "qtable_nonzero.csv").string());
  }

  outputs.manifest.config_hash = hex_hash(hash);
  outputs.manifest.code_version = kCodeVersion;
  outputs.manifest.wall_clock_utc = utc_timestamp();
  outputs.manifest.files = {{"qtable.bin", hash_file(outputs.qtable_path)},
                            {"curve.csv", hash_file(outputs.curve_path)}};
  write_manifest(outputs.manifest, outputs.manifest_path);
  return outputs;
}

EvalOutputs cmd_eval(const std::string& qtable_path, const ExperimentConfig& config,
                     std::size_t n_episodes, const std::string& out_dir, double epsilon) {
  const QTable q = load_qtable(qtable_path);
  if (q.n_states != config.env.state_count() ||
      q.n_actions != static_cast<std::size_t>(config.env.actions.count())) {
    std::ostringstream msg;
    msg << "q-table dimensions (" << q.n_states << " x " << q.n_actions
        << ") do not match the config (" << config.env.state_count() << " x "
        << config.env.actions.count() << ")";
    throw DimensionMismatchError(msg.str());
  }

  EvalOutputs outputs;
  outputs.summary =
      evaluate_greedy(q, config.env, n_episodes, config.learner.seed, config.learner.gamma,
                      epsilon);

  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < outputs.summary.logs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "episode_%03zu.jsonl", i);
    const std::string path = (fs::path(out_dir) / name).string();
    write_episode_jsonl(outputs.summary.logs[i], config.env, path);
    outputs.log_paths.push_back(path);
  }

  nlohmann::json doc;
  doc["episodes"] = outputs.summary.episodes;
  doc["successes"] = outputs.summary.successes;
  doc["success_rate"] = outputs.summary.success_rate;
  doc["mean_coverage_time"] = outputs.summary.mean_coverage_time;
  doc["p50"] = outputs.summary.p50_coverage_time;
  doc["p95"] = outputs.summary.p95_coverage_time;
  doc["collisions"] = outputs.summary.collisions;
  doc["epsilon"] = epsilon;
  outputs.summary_path = (fs::path(out_dir) / "summary.json").string();
  std::ofstream out(outputs.summary_path);
  if (!out) throw IoError("cannot write summary: " + outputs.summary_path);
  out << doc.dump(2) << "\n";
  return outputs;
}

ReplayResult cmd_replay(const std::string& log_path) {
  const LoadedEpisode loaded = read_episode_jsonl(log_path);
  const EpisodeLog& log = loaded.log;

  EnvConfig env_config = loaded.env;
  env_config.fixed_start = log.initial_pose;
  env_config.object.mode = ObjectMode::kFixed;
  env_config.object.n_points = log.object.points.size();

  CoverageEnv env(env_config, /*seed=*/0);
  env.reset_with_object(log.object);

  ReplayResult result;
  std::ostringstream table;
  table << "   t        pose              action(lR,lth,cam)  reward  collision  new cover\n";

  int covered_total = 0;
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const StepRecord& logged = log.steps[i];
    StepResult out;
    try {
      out = env.step(logged.action);
    } catch (const std::exception& e) {
      throw IoError("replay failed at step " + std::to_string(i + 1) + ": " + e.what());
    }
    const StepRecord& sim = out.record;
    if (sim.reward != logged.reward || sim.collision != logged.collision ||
        sim.new_cover != logged.new_cover) {
      throw IoError("log does not match re-simulation at step " + std::to_string(i + 1));
    }

    covered_total += static_cast<int>(sim.new_cover.size());
    ReplayStep step;
    step.t = sim.t;
    step.pose = sim.pose;
    step.action = sim.action;
    step.reward = sim.reward;
    step.new_cover = sim.new_cover;
    step.collision = sim.collision;
    step.covered_total = covered_total;
    result.steps.push_back(step);

    char line[160];
    std::string cover;
    for (std::size_t p : sim.new_cover) {
      if (!cover.empty()) cover += ",";
      cover += "p" + std::to_string(p + 1);
    }
    if (cover.empty()) cover = "-";
    std::snprintf(line, sizeof(line), "%4d  (%7.3f,%7.3f)   (%d,%d,%d)            %7.1f  %-9s  %s\n",
                  sim.t, sim.pose.x, sim.pose.y, sim.action.radial, sim.action.heading,
                  sim.action.camera, sim.reward, sim.collision ? "yes" : "no", cover.c_str());
    table << line;
  }

  result.success = log.success;
  result.coverage_time = log.coverage_time;
  result.table = table.str();
  return result;
}

}  // namespace covplan
