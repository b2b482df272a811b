#include "covplan/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace covplan {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(d)) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for '" + key + "': " + value);
  }
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("invalid integer value for '" + key + "': " + value);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty list element for '" + key + "'");
    out.push_back(parse_double(item, key));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  std::map<std::string, Setter> keys;
  const auto add = [&](const std::string& name, Setter setter) { keys[name] = setter; };

  add("grid.extent", [&](const std::string& k, const std::string& v) {
    cfg.env.grid.extent = parse_double(v, k);
  });
  add("grid.cells", [&](const std::string& k, const std::string& v) {
    cfg.env.grid.cells = static_cast<int>(parse_int(v, k));
  });
  add("fov.apex_angle_deg", [&](const std::string& k, const std::string& v) {
    cfg.env.fov_apex_angle_deg = parse_double(v, k);
  });
  add("fov.range", [&](const std::string& k, const std::string& v) {
    cfg.env.fov_range = parse_double(v, k);
  });
  add("fov.rays", [&](const std::string& k, const std::string& v) {
    cfg.env.n_rays = static_cast<std::size_t>(parse_int(v, k));
  });
  add("action.radial_step", [&](const std::string& k, const std::string& v) {
    cfg.env.actions.radial_step = parse_double(v, k);
  });
  add("action.headings", [&](const std::string& k, const std::string& v) {
    cfg.env.actions.heading_divisions = static_cast<int>(parse_int(v, k));
  });
  add("action.radial_levels", [&](const std::string& k, const std::string& v) {
    cfg.env.actions.radial_levels = static_cast<int>(parse_int(v, k));
  });
  add("action.camera_angles_deg", [&](const std::string& k, const std::string& v) {
    cfg.env.actions.camera_angles_deg = parse_double_list(v, k);
  });
  add("reward.step_penalty", [&](const std::string& k, const std::string& v) {
    cfg.env.weights.step = parse_double(v, k);
  });
  add("reward.collision_penalty", [&](const std::string& k, const std::string& v) {
    cfg.env.weights.collision = parse_double(v, k);
  });
  add("reward.coverage_reward", [&](const std::string& k, const std::string& v) {
    cfg.env.weights.coverage = parse_double(v, k);
  });
  add("object.mode", [&](const std::string& k, const std::string& v) {
    if (v == "fixed") {
      cfg.env.object.mode = ObjectMode::kFixed;
    } else if (v == "random") {
      cfg.env.object.mode = ObjectMode::kRandomIntervals;
    } else {
      throw ConfigError("object.mode must be 'fixed' or 'random', got: " + v);
    }
  });
  add("object.a", [&](const std::string& k, const std::string& v) {
    cfg.env.object.fixed.height = parse_double(v, k);
  });
  add("object.b", [&](const std::string& k, const std::string& v) {
    cfg.env.object.fixed.center = parse_double(v, k);
  });
  add("object.c", [&](const std::string& k, const std::string& v) {
    cfg.env.object.fixed.width = parse_double(v, k);
  });
  add("object.points", [&](const std::string& k, const std::string& v) {
    cfg.env.object.n_points = static_cast<std::size_t>(parse_int(v, k));
  });
  add("object.window_sigmas", [&](const std::string& k, const std::string& v) {
    cfg.env.object.window_sigmas = parse_double(v, k);
  });
  add("object.a_range", [&](const std::string& k, const std::string& v) {
    const auto list = parse_double_list(v, k);
    if (list.size() != 2) throw ConfigError("object.a_range needs exactly two values");
    cfg.env.object.height_min = list[0];
    cfg.env.object.height_max = list[1];
  });
  add("object.b_range", [&](const std::string& k, const std::string& v) {
    const auto list = parse_double_list(v, k);
    if (list.size() != 2) throw ConfigError("object.b_range needs exactly two values");
    cfg.env.object.center_min = list[0];
    cfg.env.object.center_max = list[1];
  });
  add("object.c_range", [&](const std::string& k, const std::string& v) {
    const auto list = parse_double_list(v, k);
    if (list.size() != 2) throw ConfigError("object.c_range needs exactly two values");
    cfg.env.object.width_min = list[0];
    cfg.env.object.width_max = list[1];
  });
  add("env.step_cap", [&](const std::string& k, const std::string& v) {
    cfg.env.step_cap = static_cast<int>(parse_int(v, k));
  });
  add("env.collision_mode", [&](const std::string& k, const std::string& v) {
    if (v == "reject") {
      cfg.env.collision_mode = CollisionMode::kReject;
    } else if (v == "terminate") {
      cfg.env.collision_mode = CollisionMode::kTerminate;
    } else {
      throw ConfigError("env.collision_mode must be 'reject' or 'terminate', got: " + v);
    }
  });
  add("env.coverage_state", [&](const std::string& k, const std::string& v) {
    if (v == "cumulative") {
      cfg.env.coverage_state = CoverageStateMode::kCumulative;
    } else if (v == "per_step") {
      cfg.env.coverage_state = CoverageStateMode::kPerStep;
    } else {
      throw ConfigError("env.coverage_state must be 'cumulative' or 'per_step', got: " + v);
    }
  });
  add("learner.alpha", [&](const std::string& k, const std::string& v) {
    cfg.learner.alpha = parse_double(v, k);
  });
  add("learner.gamma", [&](const std::string& k, const std::string& v) {
    cfg.learner.gamma = parse_double(v, k);
  });
  add("learner.epsilon_init", [&](const std::string& k, const std::string& v) {
    cfg.learner.epsilon_init = parse_double(v, k);
  });
  add("learner.epsilon_decay", [&](const std::string& k, const std::string& v) {
    cfg.learner.epsilon_decay = parse_double(v, k);
  });
  add("learner.epsilon_floor", [&](const std::string& k, const std::string& v) {
    cfg.learner.epsilon_floor = parse_double(v, k);
  });
  add("learner.episodes", [&](const std::string& k, const std::string& v) {
    cfg.learner.episodes = static_cast<std::size_t>(parse_int(v, k));
  });
  add("learner.seed", [&](const std::string& k, const std::string& v) {
    cfg.learner.seed = static_cast<std::uint64_t>(parse_int(v, k));
  });
  add("run.out_dir",
      [&](const std::string&, const std::string& v) { cfg.out_dir = v; });

  static const std::vector<std::string> kSections = {"grid",   "fov",    "action", "reward",
                                                     "object", "env",    "learner", "run"};

  std::string section;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    it->second(key, value);
  }

  // Validation.
  if (cfg.env.grid.cells <= 0 || !(cfg.env.grid.extent > 0.0)) {
    throw ConfigError("grid must have positive extent and cell count");
  }
  if (!(cfg.env.fov_apex_angle_deg > 0.0) || !(cfg.env.fov_apex_angle_deg < 180.0)) {
    throw ConfigError("fov.apex_angle_deg must be in (0, 180)");
  }
  if (!(cfg.env.fov_range > 0.0)) throw ConfigError("fov.range must be positive");
  if (cfg.env.n_rays < 2) throw ConfigError("fov.rays must be at least 2");
  if (cfg.env.actions.heading_divisions < 1 || cfg.env.actions.radial_levels < 0) {
    throw ConfigError("action discretization out of range");
  }
  if (cfg.env.actions.camera_angles_deg.empty()) {
    throw ConfigError("action.camera_angles_deg must not be empty");
  }
  if (cfg.env.object.n_points < 3) throw ConfigError("object.points must be at least 3");
  if (cfg.env.step_cap < 1) throw ConfigError("env.step_cap must be positive");
  if (!(cfg.learner.alpha > 0.0) || cfg.learner.alpha > 1.0) {
    throw ConfigError("learner.alpha must be in (0, 1]");
  }
  if (cfg.learner.gamma < 0.0 || cfg.learner.gamma > 1.0) {
    throw ConfigError("learner.gamma must be in [0, 1]");
  }
  for (double e : {cfg.learner.epsilon_init, cfg.learner.epsilon_floor}) {
    if (e < 0.0 || e > 1.0) throw ConfigError("epsilon values must be in [0, 1]");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[grid]\n";
  out << "extent = " << format_double(cfg.env.grid.extent) << "\n";
  out << "cells = " << cfg.env.grid.cells << "\n";
  out << "\n[fov]\n";
  out << "apex_angle_deg = " << format_double(cfg.env.fov_apex_angle_deg) << "\n";
  out << "range = " << format_double(cfg.env.fov_range) << "\n";
  out << "rays = " << cfg.env.n_rays << "\n";
  out << "\n[action]\n";
  out << "radial_step = " << format_double(cfg.env.actions.radial_step) << "\n";
  out << "headings = " << cfg.env.actions.heading_divisions << "\n";
  out << "radial_levels = " << cfg.env.actions.radial_levels << "\n";
  out << "camera_angles_deg = ";
  for (std::size_t i = 0; i < cfg.env.actions.camera_angles_deg.size(); ++i) {
    if (i) out << ", ";
    out << format_double(cfg.env.actions.camera_angles_deg[i]);
  }
  out << "\n";
  out << "\n[reward]\n";
  out << "step_penalty = " << format_double(cfg.env.weights.step) << "\n";
  out << "collision_penalty = " << format_double(cfg.env.weights.collision) << "\n";
  out << "coverage_reward = " << format_double(cfg.env.weights.coverage) << "\n";
  out << "\n[object]\n";
  out << "mode = " << (cfg.env.object.mode == ObjectMode::kFixed ? "fixed" : "random") << "\n";
  out << "a = " << format_double(cfg.env.object.fixed.height) << "\n";
  out << "b = " << format_double(cfg.env.object.fixed.center) << "\n";
  out << "c = " << format_double(cfg.env.object.fixed.width) << "\n";
  out << "points = " << cfg.env.object.n_points << "\n";
  out << "window_sigmas = " << format_double(cfg.env.object.window_sigmas) << "\n";
  out << "a_range = " << format_double(cfg.env.object.height_min) << ", "
      << format_double(cfg.env.object.height_max) << "\n";
  out << "b_range = " << format_double(cfg.env.object.center_min) << ", "
      << format_double(cfg.env.object.center_max) << "\n";
  out << "c_range = " << format_double(cfg.env.object.width_min) << ", "
      << format_double(cfg.env.object.width_max) << "\n";
  out << "\n[env]\n";
  out << "step_cap = " << cfg.env.step_cap << "\n";
  out << "collision_mode = "
      << (cfg.env.collision_mode == CollisionMode::kReject ? "reject" : "terminate") << "\n";
  out << "coverage_state = "
      << (cfg.env.coverage_state == CoverageStateMode::kCumulative ? "cumulative" : "per_step")
      << "\n";
  out << "\n[learner]\n";
  out << "alpha = " << format_double(cfg.learner.alpha) << "\n";
  out << "gamma = " << format_double(cfg.learner.gamma) << "\n";
  out << "epsilon_init = " << format_double(cfg.learner.epsilon_init) << "\n";
  out << "epsilon_decay = " << format_double(cfg.learner.epsilon_decay) << "\n";
  out << "epsilon_floor = " << format_double(cfg.learner.epsilon_floor) << "\n";
  out << "episodes = " << cfg.learner.episodes << "\n";
  out << "seed = " << cfg.learner.seed << "\n";
  out << "\n[run]\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  return out.str();
}

}  // namespace covplan
