#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covplan/object_model.hpp"
#include "covplan/rng.hpp"
#include "covplan/visibility.hpp"

namespace covplan {

// Square workspace decomposed into a uniform grid of cells.
struct GridSpec {
  double extent = 20.0;  // meters per side
  int cells = 10;        // cells per axis

  double cell_size() const { return extent / cells; }
  int cell_count() const { return cells * cells; }
  // Row-major cell index; poses on the outer boundary map to the last cell.
  int cell_index(Point2 pose) const;
  Point2 cell_center(int index) const;
};

// Discretized control set. Headings are l * 2*pi/heading_divisions for
// l = 0..heading_divisions inclusive, so heading 0 and the full turn are both
// present (the duplicate is kept; the action count is
// (heading_divisions+1) * (radial_levels+1) * camera_angles).
struct ActionSpec {
  double radial_step = 2.0;                                      // Delta_R, meters
  int heading_divisions = 8;                                     // N_theta
  int radial_levels = 1;                                         // N_R
  std::vector<double> camera_angles_deg{-85.0, -42.5, 0.0, 42.5, 85.0};

  int count() const {
    return (heading_divisions + 1) * (radial_levels + 1) *
           static_cast<int>(camera_angles_deg.size());
  }
};

struct DiscreteAction {
  int radial = 0;   // l_R in 0..radial_levels
  int heading = 0;  // l_theta in 0..heading_divisions
  int camera = 0;   // index into camera_angles_deg
};

int action_index(const ActionSpec& spec, const DiscreteAction& a);
DiscreteAction action_from_index(const ActionSpec& spec, int index);

// MDP state [s_a, s_b, s_c]: grid cell, covered-point count, quantized
// distance from the object centroid (0.5 m bins capped at ceil(sqrt(2)*extent)).
struct MdpState {
  int cell = 0;
  int covered = 0;
  int dist_bin = 0;
};

struct RewardWeights {
  double step = 1.0;        // w1
  double collision = 100.0; // w2
  double coverage = 2.0;    // w3
};

enum class CollisionMode { kReject, kTerminate };
enum class CoverageStateMode { kCumulative, kPerStep };

enum class ObjectMode { kFixed, kRandomIntervals };

struct ObjectSampling {
  ObjectMode mode = ObjectMode::kFixed;
  BellCurveParams fixed{8.0, 8.0, 2.0};
  double height_min = 1.0, height_max = 18.0;  // a
  double center_min = 5.0, center_max = 15.0;  // b
  double width_min = 1.0, width_max = 4.0;     // c
  std::size_t n_points = 11;
  double window_sigmas = 3.0;
};

struct EnvConfig {
  GridSpec grid;
  double fov_apex_angle_deg = 40.0;
  double fov_range = 10.0;
  std::size_t n_rays = 5;
  ActionSpec actions;
  RewardWeights weights;
  ObjectSampling object;
  int step_cap = 100;
  CollisionMode collision_mode = CollisionMode::kReject;
  CoverageStateMode coverage_state = CoverageStateMode::kCumulative;
  std::optional<Point2> fixed_start;  // overrides random initialization

  int distance_bins() const;
  std::size_t state_count() const;
};

// Nearest multiple of 0.5 m, ties toward +inf, capped at ceil(sqrt(2)*extent).
int quantize_distance(double d, const GridSpec& grid);

MdpState discretize_state(Point2 pose, int covered_count, const ObjectModel& obj,
                          const GridSpec& grid);

std::size_t state_index(const MdpState& s, const EnvConfig& cfg);

struct StepRecord {
  int t = 0;
  Point2 pose;             // continuous pose after the step
  MdpState state;          // discretized state after the step
  DiscreteAction action;
  double reward = 0.0;
  std::vector<std::size_t> new_cover;
  bool collision = false;
};

struct EpisodeLog {
  Point2 initial_pose;
  ObjectModel object;
  std::vector<StepRecord> steps;
  double discounted_return = 0.0;    // filled by the caller that owns gamma
  double undiscounted_return = 0.0;
  int coverage_time = 0;             // steps to full coverage, or the cap
  bool success = false;              // all points covered
  bool truncated = false;            // hit the step cap without full coverage
};

struct StepResult {
  MdpState state;
  double reward = 0.0;
  bool done = false;
  bool terminal = false;  // true when done for a real terminal condition
                          // (full coverage, or collision under kTerminate);
                          // false when the episode merely hit the step cap.
  StepRecord record;
};

// Deterministic single-agent coverage environment. One instance is
// single-owner mutable; independent instances may run concurrently.
class CoverageEnv {
 public:
  CoverageEnv(EnvConfig config, std::uint64_t seed);

  // Samples a fresh object when the config asks for random realizations and
  // places the agent uniformly on a grid cell center outside the object.
  MdpState reset();
  // Reset with a caller-supplied object realization.
  MdpState reset_with_object(ObjectModel object);

  // Applies the discretized kinematics, clamps to the workspace, resolves the
  // collision rule, rotates the FOV, and computes the newly covered points at
  // the post-step pose. Throws std::out_of_range for invalid action indices.
  StepResult step(const DiscreteAction& action);
  StepResult step(int action_index);

  const EnvConfig& config() const { return config_; }
  const ObjectModel& object() const { return object_; }
  Point2 pose() const { return pose_; }
  MdpState state() const;
  int steps_taken() const { return t_; }
  int covered_count() const { return covered_count_; }
  const std::vector<bool>& covered_mask() const { return covered_; }
  bool done() const { return done_; }
  const EpisodeLog& log() const { return log_; }

  // Restores an exact continuous configuration (pose + covered set); used by
  // the oracle to replay enumerated states.
  void restore(Point2 pose, const std::vector<bool>& covered, int t);

  // Per-heading displacement direction. Components that land within 1e-12 of
  // an exact multiple of pi/2 are snapped to 0/+-1 so axis moves stay exactly
  // on the pose lattice.
  Point2 heading_direction(int heading) const;

 private:
  StepResult apply(const DiscreteAction& action);

  EnvConfig config_;
  FovConfig fov_config_;
  std::vector<Point2> heading_dirs_;
  std::vector<double> camera_angles_rad_;
  Rng object_rng_;
  Rng init_rng_;

  ObjectModel object_;
  bool object_ready_ = false;
  Point2 pose_;
  std::vector<bool> covered_;
  int covered_count_ = 0;
  int t_ = 0;
  bool done_ = false;
  EpisodeLog log_;
};

}  // namespace covplan
