#include "covplan/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace covplan {

namespace {

// Canonical key for a continuous configuration. Poses are rounded to 1e-9 m
// so that values differing only by floating-point noise collapse to one
// configuration; real lattice poses are µm apart or more.
struct ConfigKey {
  std::int64_t x;
  std::int64_t y;
  std::uint32_t covered;

  bool operator==(const ConfigKey&) const = default;
};

struct ConfigKeyHash {
  std::size_t operator()(const ConfigKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(k.x));
    mix(static_cast<std::uint64_t>(k.y));
    mix(k.covered);
    return static_cast<std::size_t>(h);
  }
};

ConfigKey make_key(Point2 pose, std::uint32_t covered) {
  return ConfigKey{static_cast<std::int64_t>(std::llround(pose.x * 1e9)),
                   static_cast<std::int64_t>(std::llround(pose.y * 1e9)), covered};
}

std::uint32_t mask_of(const std::vector<bool>& covered) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (covered[i]) mask |= (1u << i);
  }
  return mask;
}

std::vector<bool> mask_to_vector(std::uint32_t mask, std::size_t n) {
  std::vector<bool> covered(n, false);
  for (std::size_t i = 0; i < n; ++i) covered[i] = (mask >> i) & 1u;
  return covered;
}

}  // namespace

ExactMdp enumerate_mdp(const EnvConfig& config, std::size_t max_configs) {
  if (config.object.mode != ObjectMode::kFixed) {
    throw std::invalid_argument("enumerate_mdp requires a fixed object realization");
  }
  if (config.object.n_points > 31) {
    throw std::invalid_argument("enumerate_mdp supports at most 31 boundary points");
  }

  CoverageEnv env(config, /*seed=*/0);
  env.reset();  // fixes the object realization
  const ObjectModel object = env.object();
  const std::size_t n_points = object.points.size();
  const int n_actions = config.actions.count();

  ExactMdp mdp;
  mdp.n_actions = static_cast<std::size_t>(n_actions);

  // Projected-state bookkeeping.
  std::unordered_map<std::uint64_t, std::size_t> projected_index;
  const auto project = [&](const MdpState& s) -> std::size_t {
    const std::uint64_t flat = state_index(s, config);
    const auto it = projected_index.find(flat);
    if (it != projected_index.end()) return it->second;
    const std::size_t idx = mdp.states.size();
    projected_index.emplace(flat, idx);
    mdp.states.push_back(s);
    mdp.terminal.push_back(s.covered == static_cast<int>(n_points) ? 1 : 0);
    mdp.next.resize(mdp.states.size() * mdp.n_actions, -1);
    mdp.reward.resize(mdp.states.size() * mdp.n_actions, 0.0);
    return idx;
  };

  // True-configuration BFS.
  std::unordered_map<ConfigKey, std::size_t, ConfigKeyHash> seen;
  std::deque<std::pair<Point2, std::uint32_t>> frontier;
  std::vector<std::uint8_t> transition_set;

  const auto push_config = [&](Point2 pose, std::uint32_t covered) {
    const ConfigKey key = make_key(pose, covered);
    if (seen.emplace(key, seen.size()).second) {
      if (seen.size() > max_configs) {
        throw std::runtime_error("enumerate_mdp: configuration count exceeds the guard");
      }
      frontier.emplace_back(pose, covered);
    }
  };

  // Roots: every reset configuration (grid cell centers outside the object,
  // nothing covered), or the fixed start when one is configured.
  std::set<std::size_t> starts;
  if (config.fixed_start) {
    push_config(*config.fixed_start, 0);
    MdpState s0 = discretize_state(*config.fixed_start, 0, object, config.grid);
    starts.insert(project(s0));
  } else {
    for (int cell = 0; cell < config.grid.cell_count(); ++cell) {
      const Point2 center = config.grid.cell_center(cell);
      if (is_inside(object, center)) continue;
      push_config(center, 0);
      MdpState s0 = discretize_state(center, 0, object, config.grid);
      starts.insert(project(s0));
    }
  }
  mdp.start_states.assign(starts.begin(), starts.end());

  while (!frontier.empty()) {
    const auto [pose, covered_mask] = frontier.front();
    frontier.pop_front();

    const std::vector<bool> covered = mask_to_vector(covered_mask, n_points);
    const int covered_count = static_cast<int>(std::popcount(covered_mask));
    const MdpState from = discretize_state(pose, covered_count, object, config.grid);
    const std::size_t from_idx = project(from);
    if (mdp.terminal[from_idx]) continue;

    for (int a = 0; a < n_actions; ++a) {
      env.restore(pose, covered, /*t=*/0);
      const StepResult out = env.step(a);
      const std::uint32_t next_mask = mask_of(env.covered_mask());
      const std::size_t to_idx = project(out.state);

      const std::size_t slot = from_idx * mdp.n_actions + static_cast<std::size_t>(a);
      if (slot >= transition_set.size()) transition_set.resize(mdp.next.size(), 0);
      if (transition_set[slot]) {
        if (mdp.next[slot] != static_cast<std::int64_t>(to_idx) ||
            mdp.reward[slot] != out.reward) {
          throw std::runtime_error(
              "enumerate_mdp: discrete state space is not an exact quotient of the "
              "dynamics (two configurations with the same projection disagree)");
        }
      } else {
        transition_set[slot] = 1;
        mdp.next[slot] = static_cast<std::int64_t>(to_idx);
        mdp.reward[slot] = out.reward;
      }
      push_config(env.pose(), next_mask);
    }
  }

  mdp.true_config_count = seen.size();
  return mdp;
}

ViResult value_iteration(const ExactMdp& mdp, double gamma, double tol) {
  if (!(gamma < 1.0)) throw std::invalid_argument("value iteration requires gamma < 1");
  const std::size_t n = mdp.size();
  ViResult result;
  result.values.assign(n, 0.0);
  result.q.assign(n * mdp.n_actions, 0.0);
  result.policy.assign(n, 0);

  std::vector<double> next_values(n, 0.0);
  double residual = tol + 1.0;
  while (residual > tol) {
    residual = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (mdp.terminal[s]) {
        next_values[s] = 0.0;
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < mdp.n_actions; ++a) {
        const std::size_t slot = s * mdp.n_actions + a;
        const std::int64_t to = mdp.next[slot];
        const double v_next = mdp.terminal[static_cast<std::size_t>(to)]
                                  ? 0.0
                                  : result.values[static_cast<std::size_t>(to)];
        best = std::max(best, mdp.reward[slot] + gamma * v_next);
      }
      next_values[s] = best;
      residual = std::max(residual, std::abs(best - result.values[s]));
    }
    result.values.swap(next_values);
    ++result.sweeps;
  }

  for (std::size_t s = 0; s < n; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_a = 0;
    for (std::size_t a = 0; a < mdp.n_actions; ++a) {
      const std::size_t slot = s * mdp.n_actions + a;
      double q_sa = 0.0;
      if (!mdp.terminal[s]) {
        const std::int64_t to = mdp.next[slot];
        const double v_next = mdp.terminal[static_cast<std::size_t>(to)]
                                  ? 0.0
                                  : result.values[static_cast<std::size_t>(to)];
        q_sa = mdp.reward[slot] + gamma * v_next;
      }
      result.q[slot] = q_sa;
      if (q_sa > best) {
        best = q_sa;
        best_a = a;
      }
    }
    result.policy[s] = best_a;
  }
  return result;
}

double score_plan(const std::vector<std::set<std::size_t>>& covered_per_step,
                  std::size_t n_points) {
  const double horizon = static_cast<double>(covered_per_step.size());
  std::vector<bool> credited(n_points, false);
  double score = 0.0;
  for (std::size_t k = 0; k < covered_per_step.size(); ++k) {
    const double t = static_cast<double>(k + 1);
    const double sigma = (horizon - t) / horizon;
    for (std::size_t p : covered_per_step[k]) {
      if (p >= n_points) throw std::out_of_range("covered point index out of range");
      if (!credited[p]) {
        credited[p] = true;
        score += sigma;
      }
    }
  }
  return score;
}

std::vector<std::set<std::size_t>> covered_sets_from_trajectory(
    const EnvConfig& config, const ObjectModel& obj, const std::vector<StepRecord>& steps) {
  constexpr double kPi = 3.14159265358979323846;
  const FovConfig fov_cfg =
      make_fov_config(config.fov_apex_angle_deg * kPi / 180.0, config.fov_range);
  std::vector<std::set<std::size_t>> sets;
  sets.reserve(steps.size());
  for (const StepRecord& rec : steps) {
    const double theta =
        config.actions.camera_angles_deg.at(static_cast<std::size_t>(rec.action.camera)) *
        kPi / 180.0;
    const FovState fov = rotate_fov(fov_cfg, rec.pose, theta);
    const RayBundle bundle = build_ray_bundle(fov, config.n_rays);
    sets.push_back(covered_points(fov, bundle, obj));
  }
  return sets;
}

namespace {

struct PlanSearch {
  const EnvConfig& config;
  CoverageEnv& env;
  int horizon;
  bool prune;
  Plan best;
  std::vector<DiscreteAction> current;
  // Dominance memo: best partial score seen for (pose, covered, depth).
  std::unordered_map<ConfigKey, std::unordered_map<int, double>, ConfigKeyHash> memo;

  void dfs(Point2 pose, std::uint32_t covered_mask, int depth, double partial) {
    if (depth == horizon) {
      if (partial > best.score) {
        best.score = partial;
        best.actions = current;
      }
      return;
    }
    if (prune) {
      auto& by_depth = memo[make_key(pose, covered_mask)];
      const auto it = by_depth.find(depth);
      if (it != by_depth.end() && partial <= it->second) return;
      by_depth[depth] = partial;
    }

    const std::size_t n_points = env.object().points.size();
    const std::vector<bool> covered = mask_to_vector(covered_mask, n_points);
    const int n_actions = config.actions.count();
    for (int a = 0; a < n_actions; ++a) {
      const DiscreteAction action = action_from_index(config.actions, a);
      if (prune && action.radial == 0 && action.heading != 0) continue;
      env.restore(pose, covered, depth);
      const StepResult out = env.step(a);
      if (out.record.collision) continue;  // infeasible branch

      const double t = static_cast<double>(depth + 1);
      const double sigma = (static_cast<double>(horizon) - t) / horizon;
      const double gained = sigma * static_cast<double>(out.record.new_cover.size());

      current.push_back(action);
      dfs(env.pose(), mask_of(env.covered_mask()), depth + 1, partial + gained);
      current.pop_back();
    }
  }
};

}  // namespace

Plan exhaustive_plan(const EnvConfig& config, std::uint64_t seed, int horizon, bool prune) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const double combos =
      std::pow(static_cast<double>(config.actions.count()), static_cast<double>(horizon));
  if (combos > 1e7) {
    throw std::runtime_error("exhaustive_plan: action-sequence count exceeds the guard");
  }

  EnvConfig cfg = config;
  cfg.step_cap = std::max(cfg.step_cap, horizon + 1);  // the cap must not cut the search
  CoverageEnv env(cfg, seed);
  env.reset();

  PlanSearch search{cfg, env, horizon, prune, Plan{}, {}, {}};
  search.best.score = -1.0;
  search.dfs(env.pose(), 0, 0, 0.0);
  if (search.best.score < 0.0) {
    search.best.score = 0.0;  // no feasible sequence covers anything
    search.best.actions.clear();
  }
  return search.best;
}

EnvConfig tiny_instance_config() {
  EnvConfig cfg;
  cfg.grid.extent = 8.0;
  cfg.grid.cells = 4;
  cfg.fov_apex_angle_deg = 60.0;
  cfg.fov_range = 5.0;
  cfg.n_rays = 5;
  cfg.actions.radial_step = 2.0;
  cfg.actions.heading_divisions = 4;
  cfg.actions.radial_levels = 1;
  cfg.actions.camera_angles_deg = {-85.0, 0.0, 85.0};
  cfg.object.mode = ObjectMode::kFixed;
  cfg.object.fixed = BellCurveParams{2.0, 3.4, 0.7};
  cfg.object.n_points = 4;
  cfg.step_cap = 40;
  return cfg;
}

}  // namespace covplan
