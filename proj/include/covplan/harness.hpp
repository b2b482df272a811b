#pragma once

#include <string>
#include <vector>

#include "covplan/artifacts.hpp"
#include "covplan/config.hpp"
#include "covplan/learner.hpp"

namespace covplan {

struct TrainOutputs {
  RunManifest manifest;
  std::string qtable_path;
  std::string curve_path;
  std::string manifest_path;
};

// Trains per the config, then writes qtable.bin, curve.csv and manifest.json
// into out_dir (created if missing). When dump_q_csv is set a
// qtable_nonzero.csv debug dump is written as well.
TrainOutputs cmd_train(const ExperimentConfig& config, const std::string& out_dir,
                       bool dump_q_csv = false);

struct EvalOutputs {
  EvalSummary summary;
  std::string summary_path;
  std::vector<std::string> log_paths;
};

// Loads the q-table (hard dimension check against the config: no partial
// output on mismatch), rolls out n_episodes greedily (epsilon overridable)
// and writes summary.json plus one episode_NNN.jsonl per episode.
EvalOutputs cmd_eval(const std::string& qtable_path, const ExperimentConfig& config,
                     std::size_t n_episodes, const std::string& out_dir,
                     double epsilon = 0.0);

struct ReplayStep {
  int t = 0;
  Point2 pose;
  DiscreteAction action;
  double reward = 0.0;
  std::vector<std::size_t> new_cover;
  bool collision = false;
  int covered_total = 0;
};

struct ReplayResult {
  std::vector<ReplayStep> steps;
  bool success = false;
  int coverage_time = 0;
  std::string table;  // human-readable step table
};

// Re-simulates the logged actions from the logged initial configuration and
// verifies every logged reward and coverage event; throws IoError on any
// mismatch (corrupt or inconsistent log).
ReplayResult cmd_replay(const std::string& log_path);

// The config content hash used in manifests and q-table headers.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace covplan
