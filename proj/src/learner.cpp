#include "covplan/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covplan {

double QTable::max_over_actions(std::size_t s) const {
  const double* row = values.data() + s * n_actions;
  return *std::max_element(row, row + n_actions);
}

double q_update(QTable& q, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                double alpha, double gamma, bool terminal) {
  if (s >= q.n_states || a >= q.n_actions || s_next >= q.n_states) {
    throw std::out_of_range("q_update index out of range");
  }
  const double bootstrap = terminal ? 0.0 : q.max_over_actions(s_next);
  double& entry = q.at(s, a);
  entry += alpha * (reward + gamma * bootstrap - entry);
  return entry;
}

std::size_t select_action(const QTable& q, std::size_t s, double epsilon, Rng& rng) {
  if (s >= q.n_states) throw std::out_of_range("state index out of range");
  if (epsilon > 0.0 && rng.uniform() < epsilon) {
    return rng.uniform_below(q.n_actions);
  }
  const double* row = q.values.data() + s * q.n_actions;
  const double best = *std::max_element(row, row + q.n_actions);
  std::size_t n_best = 0;
  for (std::size_t a = 0; a < q.n_actions; ++a) {
    if (row[a] == best) ++n_best;
  }
  std::size_t pick = rng.uniform_below(n_best);
  for (std::size_t a = 0; a < q.n_actions; ++a) {
    if (row[a] == best) {
      if (pick == 0) return a;
      --pick;
    }
  }
  return q.n_actions - 1;  // unreachable
}

TrainResult train(const EnvConfig& env_config, const LearnerConfig& learner) {
  CoverageEnv env(env_config, learner.seed);
  Rng explore = make_stream(learner.seed, RngStream::kExploration);

  TrainResult result;
  result.q = QTable(env_config.state_count(), env_config.actions.count());
  result.curve.episodes.reserve(learner.episodes);

  double epsilon = learner.epsilon_init;
  for (std::size_t episode = 0; episode < learner.episodes; ++episode) {
    MdpState s = env.reset();
    std::size_t s_idx = state_index(s, env_config);

    EpisodeStats stats;
    double discount = 1.0;
    while (!env.done()) {
      const std::size_t a = select_action(result.q, s_idx, epsilon, explore);
      const StepResult out = env.step(static_cast<int>(a));
      const std::size_t next_idx = state_index(out.state, env_config);
      q_update(result.q, s_idx, a, out.reward, next_idx, learner.alpha, learner.gamma,
               out.terminal);
      epsilon = std::max(learner.epsilon_floor, epsilon * learner.epsilon_decay);

      stats.discounted_return += discount * out.reward;
      discount *= learner.gamma;
      s_idx = next_idx;
    }
    const EpisodeLog& log = env.log();
    stats.undiscounted_return = log.undiscounted_return;
    stats.coverage_time = log.coverage_time;
    stats.success = log.success;
    stats.epsilon = epsilon;
    result.curve.episodes.push_back(stats);
  }
  return result;
}

EvalSummary evaluate_greedy(const QTable& q, const EnvConfig& env_config,
                            std::size_t n_episodes, std::uint64_t seed, double gamma,
                            double epsilon) {
  if (q.n_states != env_config.state_count() ||
      q.n_actions != static_cast<std::size_t>(env_config.actions.count())) {
    throw std::invalid_argument("q-table dimensions do not match the env config");
  }
  CoverageEnv env(env_config, make_stream(seed, RngStream::kEvalInit).next_u64());
  Rng tie_break = make_stream(seed, RngStream::kEvalTieBreak);

  EvalSummary summary;
  summary.episodes = n_episodes;
  std::vector<double> coverage_times;

  for (std::size_t episode = 0; episode < n_episodes; ++episode) {
    MdpState s = env.reset();
    std::size_t s_idx = state_index(s, env_config);
    double discount = 1.0;
    double discounted = 0.0;
    while (!env.done()) {
      const std::size_t a = select_action(q, s_idx, epsilon, tie_break);
      const StepResult out = env.step(static_cast<int>(a));
      s_idx = state_index(out.state, env_config);
      discounted += discount * out.reward;
      discount *= gamma;
      if (out.record.collision) ++summary.collisions;
    }
    EpisodeLog log = env.log();
    log.discounted_return = discounted;
    if (log.success) {
      ++summary.successes;
      coverage_times.push_back(static_cast<double>(log.coverage_time));
    }
    summary.logs.push_back(std::move(log));
  }

  summary.success_rate =
      n_episodes == 0 ? 0.0 : static_cast<double>(summary.successes) / n_episodes;
  if (!coverage_times.empty()) {
    std::sort(coverage_times.begin(), coverage_times.end());
    double sum = 0.0;
    for (double t : coverage_times) sum += t;
    summary.mean_coverage_time = sum / coverage_times.size();
    const auto pct = [&](double p) {
      const double pos = p * (coverage_times.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, coverage_times.size() - 1);
      const double frac = pos - lo;
      return coverage_times[lo] * (1.0 - frac) + coverage_times[hi] * frac;
    };
    summary.p50_coverage_time = pct(0.50);
    summary.p95_coverage_time = pct(0.95);
  }
  return summary;
}

}  // namespace covplan
