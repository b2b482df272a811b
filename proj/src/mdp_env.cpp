#include "covplan/mdp_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covplan {

namespace {
constexpr double kPi = 3.14159265358979323846;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }
}  // namespace

int GridSpec::cell_index(Point2 pose) const {
  const double size = cell_size();
  int col = static_cast<int>(std::floor(pose.x / size));
  int row = static_cast<int>(std::floor(pose.y / size));
  col = std::clamp(col, 0, cells - 1);
  row = std::clamp(row, 0, cells - 1);
  return row * cells + col;
}

Point2 GridSpec::cell_center(int index) const {
  const double size = cell_size();
  const int row = index / cells;
  const int col = index % cells;
  return {(col + 0.5) * size, (row + 0.5) * size};
}

int action_index(const ActionSpec& spec, const DiscreteAction& a) {
  return (a.radial * (spec.heading_divisions + 1) + a.heading) *
             static_cast<int>(spec.camera_angles_deg.size()) +
         a.camera;
}

DiscreteAction action_from_index(const ActionSpec& spec, int index) {
  const int n_cam = static_cast<int>(spec.camera_angles_deg.size());
  DiscreteAction a;
  a.camera = index % n_cam;
  index /= n_cam;
  a.heading = index % (spec.heading_divisions + 1);
  a.radial = index / (spec.heading_divisions + 1);
  return a;
}

int EnvConfig::distance_bins() const {
  const int d_max = static_cast<int>(std::ceil(std::sqrt(2.0) * grid.extent));
  return 2 * d_max + 1;
}

std::size_t EnvConfig::state_count() const {
  return static_cast<std::size_t>(grid.cell_count()) * (object.n_points + 1) *
         distance_bins();
}

int quantize_distance(double d, const GridSpec& grid) {
  const int d_max = static_cast<int>(std::ceil(std::sqrt(2.0) * grid.extent));
  const int bin = static_cast<int>(std::floor(2.0 * d + 0.5));
  return std::clamp(bin, 0, 2 * d_max);
}

MdpState discretize_state(Point2 pose, int covered_count, const ObjectModel& obj,
                          const GridSpec& grid) {
  MdpState s;
  s.cell = grid.cell_index(pose);
  s.covered = covered_count;
  s.dist_bin = quantize_distance(distance(pose, obj.centroid), grid);
  return s;
}

std::size_t state_index(const MdpState& s, const EnvConfig& cfg) {
  const std::size_t per_cell = cfg.object.n_points + 1;
  return (static_cast<std::size_t>(s.cell) * per_cell + s.covered) * cfg.distance_bins() +
         s.dist_bin;
}

CoverageEnv::CoverageEnv(EnvConfig config, std::uint64_t seed)
    : config_(std::move(config)),
      fov_config_(make_fov_config(deg_to_rad(config_.fov_apex_angle_deg), config_.fov_range)),
      object_rng_(make_stream(seed, RngStream::kObjectSampling)),
      init_rng_(make_stream(seed, RngStream::kAgentInit)) {
  const int n_headings = config_.actions.heading_divisions + 1;
  heading_dirs_.reserve(n_headings);
  for (int l = 0; l < n_headings; ++l) {
    const double angle = l * 2.0 * kPi / config_.actions.heading_divisions;
    double c = std::cos(angle);
    double s = std::sin(angle);
    if (std::abs(c) < 1e-12) c = 0.0;
    if (std::abs(s) < 1e-12) s = 0.0;
    if (std::abs(c - 1.0) < 1e-12) c = 1.0;
    if (std::abs(c + 1.0) < 1e-12) c = -1.0;
    if (std::abs(s - 1.0) < 1e-12) s = 1.0;
    if (std::abs(s + 1.0) < 1e-12) s = -1.0;
    heading_dirs_.push_back(Point2{c, s});
  }
  for (double deg : config_.actions.camera_angles_deg) {
    camera_angles_rad_.push_back(deg_to_rad(deg));
  }
}

Point2 CoverageEnv::heading_direction(int heading) const {
  return heading_dirs_.at(static_cast<std::size_t>(heading));
}

MdpState CoverageEnv::reset() {
  ObjectModel obj;
  if (config_.object.mode == ObjectMode::kRandomIntervals) {
    BellCurveParams params;
    const std::uint64_t draw_id = object_rng_.next_u64();
    params.height = object_rng_.uniform(config_.object.height_min, config_.object.height_max);
    params.center = object_rng_.uniform(config_.object.center_min, config_.object.center_max);
    params.width = object_rng_.uniform(config_.object.width_min, config_.object.width_max);
    obj = sample_bell_object(params, config_.object.n_points, config_.object.window_sigmas);
    obj.seed = draw_id;
  } else {
    obj = sample_bell_object(config_.object.fixed, config_.object.n_points,
                             config_.object.window_sigmas);
  }
  return reset_with_object(std::move(obj));
}

MdpState CoverageEnv::reset_with_object(ObjectModel object) {
  object_ = std::move(object);
  object_ready_ = true;

  if (config_.fixed_start) {
    pose_ = *config_.fixed_start;
  } else {
    // Uniform over grid cell centers, rejecting centers inside the object.
    while (true) {
      const int cell = static_cast<int>(init_rng_.uniform_below(config_.grid.cell_count()));
      const Point2 candidate = config_.grid.cell_center(cell);
      if (!is_inside(object_, candidate)) {
        pose_ = candidate;
        break;
      }
    }
  }

  covered_.assign(object_.points.size(), false);
  covered_count_ = 0;
  t_ = 0;
  done_ = false;
  log_ = EpisodeLog{};
  log_.initial_pose = pose_;
  log_.object = object_;
  log_.coverage_time = config_.step_cap;
  return state();
}

MdpState CoverageEnv::state() const {
  const int reported =
      config_.coverage_state == CoverageStateMode::kCumulative
          ? covered_count_
          : (log_.steps.empty() ? 0 : static_cast<int>(log_.steps.back().new_cover.size()));
  return discretize_state(pose_, reported, object_, config_.grid);
}

void CoverageEnv::restore(Point2 pose, const std::vector<bool>& covered, int t) {
  if (!object_ready_) throw std::logic_error("restore before reset");
  if (covered.size() != object_.points.size()) {
    throw std::invalid_argument("covered mask size mismatch");
  }
  pose_ = pose;
  covered_ = covered;
  covered_count_ = static_cast<int>(std::count(covered.begin(), covered.end(), true));
  t_ = t;
  done_ = false;
  log_.steps.clear();
  log_.success = false;
  log_.truncated = false;
  log_.undiscounted_return = 0.0;
}

StepResult CoverageEnv::step(int index) {
  if (index < 0 || index >= config_.actions.count()) {
    throw std::out_of_range("action index out of range");
  }
  return apply(action_from_index(config_.actions, index));
}

StepResult CoverageEnv::step(const DiscreteAction& action) {
  if (action.radial < 0 || action.radial > config_.actions.radial_levels ||
      action.heading < 0 || action.heading > config_.actions.heading_divisions ||
      action.camera < 0 ||
      action.camera >= static_cast<int>(config_.actions.camera_angles_deg.size())) {
    throw std::out_of_range("action component out of range");
  }
  return apply(action);
}

StepResult CoverageEnv::apply(const DiscreteAction& action) {
  if (!object_ready_) throw std::logic_error("step before reset");
  if (done_) throw std::logic_error("step on finished episode");

  const Point2 dir = heading_dirs_[static_cast<std::size_t>(action.heading)];
  const double displacement = action.radial * config_.actions.radial_step;
  Point2 candidate = pose_ + dir * displacement;
  candidate.x = std::clamp(candidate.x, 0.0, config_.grid.extent);
  candidate.y = std::clamp(candidate.y, 0.0, config_.grid.extent);

  const bool collision = is_inside(object_, candidate);
  bool terminal = false;
  if (collision) {
    if (config_.collision_mode == CollisionMode::kReject) {
      candidate = pose_;  // move rejected, penalty still applies
    } else {
      terminal = true;
    }
  }
  pose_ = candidate;

  const FovState fov =
      rotate_fov(fov_config_, pose_, camera_angles_rad_[static_cast<std::size_t>(action.camera)]);
  const RayBundle bundle = build_ray_bundle(fov, config_.n_rays);
  const std::set<std::size_t> visible = covered_points(fov, bundle, object_);

  std::vector<std::size_t> new_cover;
  for (std::size_t idx : visible) {
    if (!covered_[idx]) {
      covered_[idx] = true;
      new_cover.push_back(idx);
    }
  }
  covered_count_ += static_cast<int>(new_cover.size());

  const double reward = -config_.weights.step -
                        config_.weights.collision * (collision ? 1.0 : 0.0) +
                        config_.weights.coverage * static_cast<double>(new_cover.size());

  ++t_;
  const bool full = covered_count_ == static_cast<int>(object_.points.size());
  if (full) terminal = true;
  const bool capped = t_ >= config_.step_cap;
  done_ = terminal || capped;

  StepResult result;
  result.reward = reward;
  result.done = done_;
  result.terminal = terminal;

  StepRecord rec;
  rec.t = t_;
  rec.pose = pose_;
  rec.action = action;
  rec.reward = reward;
  rec.new_cover = std::move(new_cover);
  rec.collision = collision;

  const int reported_cover = config_.coverage_state == CoverageStateMode::kCumulative
                                 ? covered_count_
                                 : static_cast<int>(rec.new_cover.size());
  rec.state = discretize_state(pose_, reported_cover, object_, config_.grid);
  result.state = rec.state;

  log_.undiscounted_return += reward;
  if (full && !log_.success) {
    log_.success = true;
    log_.coverage_time = t_;
  }
  log_.truncated = done_ && !log_.success && capped;
  log_.steps.push_back(rec);
  result.record = log_.steps.back();
  return result;
}

}  // namespace covplan
