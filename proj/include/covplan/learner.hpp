#pragma once

#include <cstdint>
#include <vector>

#include "covplan/mdp_env.hpp"
#include "covplan/rng.hpp"

namespace covplan {

// Dense action-value table, zero-initialized. Layout: state-major, i.e.
// values[state * n_actions + action].
struct QTable {
  std::size_t n_states = 0;
  std::size_t n_actions = 0;
  std::vector<double> values;

  QTable() = default;
  QTable(std::size_t states, std::size_t actions)
      : n_states(states), n_actions(actions), values(states * actions, 0.0) {}

  double& at(std::size_t s, std::size_t a) { return values[s * n_actions + a]; }
  double at(std::size_t s, std::size_t a) const { return values[s * n_actions + a]; }
  double max_over_actions(std::size_t s) const;
};

struct LearnerConfig {
  double alpha = 0.1;
  double gamma = 0.8;
  double epsilon_init = 0.9;
  double epsilon_decay = 0.9999;  // multiplicative, applied on every env step
  double epsilon_floor = 0.0;
  std::size_t episodes = 5000;
  std::uint64_t seed = 1;
};

struct EpisodeStats {
  double discounted_return = 0.0;
  double undiscounted_return = 0.0;
  int coverage_time = 0;  // steps to full coverage, or the step cap
  bool success = false;
  double epsilon = 0.0;  // exploration rate after the episode
};

struct LearningCurve {
  std::vector<EpisodeStats> episodes;
};

// One temporal-difference backup; returns the new entry value. Only the
// (s, a) entry changes. When `terminal` is set the bootstrap term is zero
// (episodes that merely hit the step cap are not terminal).
double q_update(QTable& q, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                double alpha, double gamma, bool terminal = false);

// epsilon-greedy: with probability epsilon a uniformly random action, else
// argmax with ties broken uniformly at random among the maximizers.
std::size_t select_action(const QTable& q, std::size_t s, double epsilon, Rng& rng);

struct TrainResult {
  QTable q;
  LearningCurve curve;
};

// Episode loop with per-step epsilon decay persisting across episode
// boundaries. The environment is seeded from learner.seed.
TrainResult train(const EnvConfig& env_config, const LearnerConfig& learner);

struct EvalSummary {
  std::size_t episodes = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_coverage_time = 0.0;  // over successful episodes
  double p50_coverage_time = 0.0;
  double p95_coverage_time = 0.0;
  std::size_t collisions = 0;  // total collision events over all episodes
  std::vector<EpisodeLog> logs;
};

// Greedy rollouts (epsilon overridable for stochastic evaluation). Tie-breaks
// draw from a dedicated evaluation stream so training and evaluation RNGs
// stay independent.
EvalSummary evaluate_greedy(const QTable& q, const EnvConfig& env_config,
                            std::size_t n_episodes, std::uint64_t seed, double gamma,
                            double epsilon = 0.0);

}  // namespace covplan
