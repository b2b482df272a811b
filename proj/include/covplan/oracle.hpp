#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "covplan/mdp_env.hpp"

namespace covplan {

// Exact enumeration of the environment dynamics over the discrete state
// space [s_a, s_b, s_c]. The enumeration walks the true continuous
// configurations (pose + covered set) breadth-first from every reset
// configuration and projects them; it throws std::runtime_error if two true
// configurations with the same projection ever disagree on the projected
// successor or reward of some action, i.e. if the discretization is not an
// exact Markov quotient of the dynamics for this instance.
struct ExactMdp {
  std::size_t n_actions = 0;
  std::vector<MdpState> states;           // projected states, discovery order
  std::vector<std::int64_t> next;         // [state * n_actions + a] successor
  std::vector<double> reward;             // [state * n_actions + a]
  std::vector<std::uint8_t> terminal;     // per state; no outgoing transitions
  std::vector<std::size_t> start_states;  // projections of reset configurations
  std::size_t true_config_count = 0;

  std::size_t size() const { return states.size(); }
};

ExactMdp enumerate_mdp(const EnvConfig& config, std::size_t max_configs = 100000);

struct ViResult {
  std::vector<double> values;       // optimal state values
  std::vector<double> q;            // optimal action values [s * n_actions + a]
  std::vector<std::size_t> policy;  // greedy action per state
  std::size_t sweeps = 0;
};

// Jacobi-style sweeps until the Bellman residual drops below tol.
ViResult value_iteration(const ExactMdp& mdp, double gamma, double tol = 1e-12);

// First-coverage score: each point credited once, at the first step it is
// covered, weighted sigma(t) = (T - t) / T for t = 1..T. Coverage at the
// final step therefore earns nothing, exactly as the weight is defined.
double score_plan(const std::vector<std::set<std::size_t>>& covered_per_step,
                  std::size_t n_points);

// Full (not first-time) covered sets along a logged trajectory, recomputed
// from the poses and camera angles.
std::vector<std::set<std::size_t>> covered_sets_from_trajectory(
    const EnvConfig& config, const ObjectModel& obj, const std::vector<StepRecord>& steps);

struct Plan {
  std::vector<DiscreteAction> actions;
  double score = 0.0;
};

// Horizon-bounded exhaustive search over collision-free action sequences,
// maximizing the first-coverage score. The environment is seeded with `seed`
// for the initial configuration (use config.fixed_start for a scripted
// start). Guard: actions^horizon must not exceed 1e7. With prune enabled,
// zero-displacement headings are deduplicated and dominated
// (pose, covered, t) revisits are cut; the optimum is unchanged.
Plan exhaustive_plan(const EnvConfig& config, std::uint64_t seed, int horizon,
                     bool prune = true);

// The frozen tiny instance used by the oracle-equivalence acceptance
// criterion: a 4x4 grid, 4 boundary points and 3 camera angles, constructed
// so that enumerate_mdp verifies the discrete state space is an exact
// quotient of the continuous dynamics.
EnvConfig tiny_instance_config();

}  // namespace covplan
