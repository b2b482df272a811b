#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "covplan/learner.hpp"
#include "covplan/mdp_env.hpp"

namespace covplan {

// Full experiment description. Defaults reproduce the reference setup:
// 20 m x 20 m workspace on a 10x10 grid, 40 deg / 10 m FOV with 5 rays,
// Delta_R = 2 m with 8 heading divisions, camera angles
// {-85, -42.5, 0, 42.5, 85} deg, weights (1, 100, 2), alpha 0.1, gamma 0.8,
// epsilon 0.9 decaying by 0.9999 per step, 11 boundary points, 100-step cap.
struct ExperimentConfig {
  EnvConfig env;
  LearnerConfig learner;
  std::string out_dir = "runs/default";

  std::uint64_t seed() const { return learner.seed; }
};

// Flat typed key = value format with [section] headers; '#' starts a
// comment. Unknown sections or keys are hard errors, as are malformed
// values. Every key is optional and defaults to the reference setup.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Serialization round-trips losslessly (doubles printed with max precision).
std::string serialize_config(const ExperimentConfig& config);

// Raised on any config syntax or validation problem.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace covplan
