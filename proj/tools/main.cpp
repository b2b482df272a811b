#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "covplan/harness.hpp"
#include "covplan/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitDims = 4;

std::string resolve_out_dir(const std::string& flag_value, const std::string& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("COVPLAN_OUT")) {
    if (*env) return env;
  }
  return config_value;
}

covplan::ExperimentConfig load_or_default(const std::string& path) {
  if (path.empty()) return covplan::ExperimentConfig{};
  return covplan::load_config(path);
}

int run_train(const std::string& config_path, const std::string& out_flag,
              std::uint64_t seed, bool seed_set, bool dump_q) {
  covplan::ExperimentConfig config = load_or_default(config_path);
  if (seed_set) config.learner.seed = seed;
  const std::string out_dir = resolve_out_dir(out_flag, config.out_dir);

  const covplan::TrainOutputs outputs = covplan::cmd_train(config, out_dir, dump_q);
  std::cout << "trained " << config.learner.episodes << " episodes\n"
            << "  qtable:   " << outputs.qtable_path << "\n"
            << "  curve:    " << outputs.curve_path << "\n"
            << "  manifest: " << outputs.manifest_path << "\n";
  return kExitOk;
}

int run_eval(const std::string& qtable_path, const std::string& config_path,
             std::size_t episodes, double epsilon, const std::string& out_flag,
             std::uint64_t seed, bool seed_set) {
  covplan::ExperimentConfig config = load_or_default(config_path);
  if (seed_set) config.learner.seed = seed;
  const std::string out_dir = resolve_out_dir(out_flag, config.out_dir + "/eval");

  const covplan::EvalOutputs outputs =
      covplan::cmd_eval(qtable_path, config, episodes, out_dir, epsilon);
  const covplan::EvalSummary& s = outputs.summary;
  std::cout << "episodes: " << s.episodes << "\n"
            << "success rate: " << s.success_rate << "\n"
            << "mean coverage time: " << s.mean_coverage_time << " (p50 "
            << s.p50_coverage_time << ", p95 " << s.p95_coverage_time << ")\n"
            << "collisions: " << s.collisions << "\n"
            << "summary: " << outputs.summary_path << "\n";
  return kExitOk;
}

int run_replay(const std::string& log_path) {
  const covplan::ReplayResult result = covplan::cmd_replay(log_path);
  std::cout << result.table;
  std::cout << (result.success ? "covered all points at step " : "coverage incomplete; ran ")
            << result.coverage_time << "\n";
  return kExitOk;
}

int run_oracle_enumerate(const std::string& config_path) {
  const covplan::ExperimentConfig config = load_or_default(config_path);
  const covplan::ExactMdp mdp = covplan::enumerate_mdp(config.env);
  std::cout << "projected states: " << mdp.size() << "\n"
            << "true configurations: " << mdp.true_config_count << "\n"
            << "start states: " << mdp.start_states.size() << "\n"
            << "quotient: consistent\n";
  return kExitOk;
}

int run_oracle_vi(const std::string& config_path, double gamma) {
  const covplan::ExperimentConfig config = load_or_default(config_path);
  const covplan::ExactMdp mdp = covplan::enumerate_mdp(config.env);
  const covplan::ViResult vi = covplan::value_iteration(mdp, gamma);
  double best = -1e300, worst = 1e300;
  for (std::size_t s : mdp.start_states) {
    best = std::max(best, vi.values[s]);
    worst = std::min(worst, vi.values[s]);
  }
  std::cout << "states: " << mdp.size() << ", sweeps: " << vi.sweeps << "\n"
            << "start-state values in [" << worst << ", " << best << "]\n";
  return kExitOk;
}

int run_oracle_plan(const std::string& config_path, int horizon, std::uint64_t seed,
                    bool no_prune) {
  const covplan::ExperimentConfig config = load_or_default(config_path);
  const covplan::Plan plan = covplan::exhaustive_plan(config.env, seed, horizon, !no_prune);
  std::cout << "best score: " << plan.score << "\nactions:";
  for (const covplan::DiscreteAction& a : plan.actions) {
    std::cout << " (" << a.radial << "," << a.heading << "," << a.camera << ")";
  }
  std::cout << "\n";
  return kExitOk;
}

int run_oracle_tiny() {
  const covplan::EnvConfig tiny = covplan::tiny_instance_config();
  const covplan::ExactMdp mdp = covplan::enumerate_mdp(tiny);
  const covplan::ViResult vi = covplan::value_iteration(mdp, 0.8);
  std::cout << "tiny instance: " << mdp.size() << " states over "
            << mdp.true_config_count << " configurations, consistent quotient\n"
            << "start states: " << mdp.start_states.size() << "\n";
  for (std::size_t s : mdp.start_states) {
    std::cout << "  V*(start " << s << ") = " << vi.values[s] << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage planning with ray tracing: train / evaluate / replay"};
  app.require_subcommand(1);

  std::string config_path, out_dir, qtable_path, log_path;
  std::uint64_t seed = 0;
  bool dump_q = false, no_prune = false;
  std::size_t episodes = 100;
  double epsilon = 0.0, gamma = 0.8;
  int horizon = 3;

  auto* train = app.add_subcommand("train", "train a q-table from a config");
  train->add_option("--config", config_path, "experiment config file");
  auto* train_seed = train->add_option("--seed", seed, "override the config seed");
  train->add_option("--out", out_dir, "output directory");
  train->add_flag("--dump-q", dump_q, "also write a CSV dump of nonzero q entries");

  auto* eval = app.add_subcommand("eval", "greedy evaluation of a trained q-table");
  eval->add_option("--qtable", qtable_path, "q-table file")->required();
  eval->add_option("--config", config_path, "experiment config file");
  eval->add_option("--episodes", episodes, "number of evaluation episodes");
  eval->add_option("--epsilon", epsilon, "exploration override (default greedy)");
  auto* eval_seed = eval->add_option("--seed", seed, "override the config seed");
  eval->add_option("--out", out_dir, "output directory");

  auto* replay = app.add_subcommand("replay", "re-simulate and print an episode log");
  replay->add_option("--log", log_path, "episode JSONL file")->required();

  auto* oracle = app.add_subcommand("oracle", "ground-truth debug utilities");
  oracle->group("");  // hidden from the main help
  oracle->require_subcommand(1);
  auto* oracle_enum = oracle->add_subcommand("enumerate", "enumerate the exact MDP");
  oracle_enum->add_option("--config", config_path);
  auto* oracle_vi = oracle->add_subcommand("vi", "value iteration on the exact MDP");
  oracle_vi->add_option("--config", config_path);
  oracle_vi->add_option("--gamma", gamma);
  auto* oracle_plan = oracle->add_subcommand("plan", "horizon-bounded exhaustive plan");
  oracle_plan->add_option("--config", config_path);
  oracle_plan->add_option("--horizon", horizon);
  oracle_plan->add_option("--seed", seed);
  oracle_plan->add_flag("--no-prune", no_prune);
  auto* oracle_tiny = oracle->add_subcommand("tiny", "check the frozen tiny instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (train->parsed()) {
      return run_train(config_path, out_dir, seed, !train_seed->empty(), dump_q);
    }
    if (eval->parsed()) {
      return run_eval(qtable_path, config_path, episodes, epsilon, out_dir, seed,
                      !eval_seed->empty());
    }
    if (replay->parsed()) return run_replay(log_path);
    if (oracle->parsed()) {
      if (oracle_enum->parsed()) return run_oracle_enumerate(config_path);
      if (oracle_vi->parsed()) return run_oracle_vi(config_path, gamma);
      if (oracle_plan->parsed()) return run_oracle_plan(config_path, horizon, seed, no_prune);
      if (oracle_tiny->parsed()) return run_oracle_tiny();
    }
  } catch (const covplan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const covplan::DimensionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDims;
  } catch (const covplan::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
