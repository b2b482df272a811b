#include "covplan/artifacts.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace covplan {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {
std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  return to_hex(fnv1a64(bytes.data(), bytes.size()));
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for hashing: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

namespace {
constexpr char kQTableMagic[4] = {'C', 'V', 'P', 'Q'};
constexpr std::uint32_t kQTableVersion = 1;
}  // namespace

void save_qtable(const QTable& q, const std::string& path, std::uint64_t config_hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open q-table file for writing: " + path);
  out.write(kQTableMagic, 4);
  const std::uint32_t version = kQTableVersion;
  const std::uint64_t n_states = q.n_states;
  const std::uint64_t n_actions = q.n_actions;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&n_states), sizeof(n_states));
  out.write(reinterpret_cast<const char*>(&n_actions), sizeof(n_actions));
  out.write(reinterpret_cast<const char*>(&config_hash), sizeof(config_hash));
  out.write(reinterpret_cast<const char*>(q.values.data()),
            static_cast<std::streamsize>(q.values.size() * sizeof(double)));
  if (!out) throw IoError("failed writing q-table: " + path);
}

QTable load_qtable(const std::string& path, std::uint64_t* config_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open q-table file: " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n_states = 0, n_actions = 0, hash = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&n_states), sizeof(n_states));
  in.read(reinterpret_cast<char*>(&n_actions), sizeof(n_actions));
  in.read(reinterpret_cast<char*>(&hash), sizeof(hash));
  if (!in || std::memcmp(magic, kQTableMagic, 4) != 0) {
    throw IoError("not a q-table file: " + path);
  }
  if (version != kQTableVersion) {
    throw IoError("unsupported q-table version in " + path);
  }
  QTable q(n_states, n_actions);
  in.read(reinterpret_cast<char*>(q.values.data()),
          static_cast<std::streamsize>(q.values.size() * sizeof(double)));
  if (!in) throw IoError("truncated q-table file: " + path);
  if (config_hash) *config_hash = hash;
  return q;
}

void dump_qtable_csv(const QTable& q, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open csv file for writing: " + path);
  out << "state,action,value\n";
  for (std::size_t s = 0; s < q.n_states; ++s) {
    for (std::size_t a = 0; a < q.n_actions; ++a) {
      const double v = q.at(s, a);
      if (v != 0.0) out << s << "," << a << "," << format_double(v) << "\n";
    }
  }
}

void write_curve_csv(const LearningCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open csv file for writing: " + path);
  out << "episode,discounted_return,undiscounted_return,coverage_time,epsilon\n";
  for (std::size_t i = 0; i < curve.episodes.size(); ++i) {
    const EpisodeStats& e = curve.episodes[i];
    out << i << "," << format_double(e.discounted_return) << ","
        << format_double(e.undiscounted_return) << "," << e.coverage_time << ","
        << format_double(e.epsilon) << "\n";
  }
}

namespace {

nlohmann::json env_to_json(const EnvConfig& env) {
  nlohmann::json doc;
  doc["grid"] = {{"extent", env.grid.extent}, {"cells", env.grid.cells}};
  doc["fov"] = {{"apex_angle_deg", env.fov_apex_angle_deg},
                {"range", env.fov_range},
                {"rays", env.n_rays}};
  doc["action"] = {{"radial_step", env.actions.radial_step},
                   {"headings", env.actions.heading_divisions},
                   {"radial_levels", env.actions.radial_levels},
                   {"camera_angles_deg", env.actions.camera_angles_deg}};
  doc["reward"] = {{"step", env.weights.step},
                   {"collision", env.weights.collision},
                   {"coverage", env.weights.coverage}};
  doc["step_cap"] = env.step_cap;
  doc["collision_mode"] = env.collision_mode == CollisionMode::kReject ? "reject" : "terminate";
  doc["coverage_state"] =
      env.coverage_state == CoverageStateMode::kCumulative ? "cumulative" : "per_step";
  doc["n_points"] = env.object.n_points;
  doc["window_sigmas"] = env.object.window_sigmas;
  return doc;
}

EnvConfig env_from_json(const nlohmann::json& doc) {
  EnvConfig env;
  env.grid.extent = doc.at("grid").at("extent").get<double>();
  env.grid.cells = doc.at("grid").at("cells").get<int>();
  env.fov_apex_angle_deg = doc.at("fov").at("apex_angle_deg").get<double>();
  env.fov_range = doc.at("fov").at("range").get<double>();
  env.n_rays = doc.at("fov").at("rays").get<std::size_t>();
  env.actions.radial_step = doc.at("action").at("radial_step").get<double>();
  env.actions.heading_divisions = doc.at("action").at("headings").get<int>();
  env.actions.radial_levels = doc.at("action").at("radial_levels").get<int>();
  env.actions.camera_angles_deg =
      doc.at("action").at("camera_angles_deg").get<std::vector<double>>();
  env.weights.step = doc.at("reward").at("step").get<double>();
  env.weights.collision = doc.at("reward").at("collision").get<double>();
  env.weights.coverage = doc.at("reward").at("coverage").get<double>();
  env.step_cap = doc.at("step_cap").get<int>();
  env.collision_mode = doc.at("collision_mode").get<std::string>() == "reject"
                           ? CollisionMode::kReject
                           : CollisionMode::kTerminate;
  env.coverage_state = doc.at("coverage_state").get<std::string>() == "cumulative"
                           ? CoverageStateMode::kCumulative
                           : CoverageStateMode::kPerStep;
  env.object.n_points = doc.at("n_points").get<std::size_t>();
  env.object.window_sigmas = doc.at("window_sigmas").get<double>();
  return env;
}

}  // namespace

std::string episode_log_to_jsonl(const EpisodeLog& log, const EnvConfig& env) {
  std::ostringstream out;
  nlohmann::json meta;
  meta["type"] = "meta";
  meta["env"] = env_to_json(env);
  meta["object"] = nlohmann::json::parse(object_to_json(log.object));
  meta["x0"] = {log.initial_pose.x, log.initial_pose.y};
  meta["success"] = log.success;
  meta["truncated"] = log.truncated;
  meta["coverage_time"] = log.coverage_time;
  meta["undiscounted_return"] = log.undiscounted_return;
  meta["discounted_return"] = log.discounted_return;
  out << meta.dump() << "\n";
  for (const StepRecord& rec : log.steps) {
    nlohmann::json line;
    line["t"] = rec.t;
    line["x"] = {rec.pose.x, rec.pose.y};
    line["s"] = {rec.state.cell, rec.state.covered, rec.state.dist_bin};
    line["a"] = {rec.action.radial, rec.action.heading, rec.action.camera};
    line["r"] = rec.reward;
    line["new_cover"] = rec.new_cover;
    line["collision"] = rec.collision;
    out << line.dump() << "\n";
  }
  return out.str();
}

void write_episode_jsonl(const EpisodeLog& log, const EnvConfig& env,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open episode log for writing: " + path);
  out << episode_log_to_jsonl(log, env);
}

LoadedEpisode episode_log_from_jsonl(const std::string& text) {
  LoadedEpisode loaded;
  EpisodeLog& log = loaded.log;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  bool meta_seen = false;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed episode log at line " + std::to_string(line_no) + ": " +
                    e.what());
    }
    try {
      if (!meta_seen) {
        if (doc.value("type", "") != "meta") {
          throw IoError("episode log must start with a meta line");
        }
        loaded.env = env_from_json(doc.at("env"));
        log.object = object_from_json(doc.at("object").dump());
        log.initial_pose = {doc.at("x0").at(0).get<double>(), doc.at("x0").at(1).get<double>()};
        log.success = doc.value("success", false);
        log.truncated = doc.value("truncated", false);
        log.coverage_time = doc.value("coverage_time", 0);
        log.undiscounted_return = doc.value("undiscounted_return", 0.0);
        log.discounted_return = doc.value("discounted_return", 0.0);
        meta_seen = true;
        continue;
      }
      StepRecord rec;
      rec.t = doc.at("t").get<int>();
      rec.pose = {doc.at("x").at(0).get<double>(), doc.at("x").at(1).get<double>()};
      rec.state.cell = doc.at("s").at(0).get<int>();
      rec.state.covered = doc.at("s").at(1).get<int>();
      rec.state.dist_bin = doc.at("s").at(2).get<int>();
      rec.action.radial = doc.at("a").at(0).get<int>();
      rec.action.heading = doc.at("a").at(1).get<int>();
      rec.action.camera = doc.at("a").at(2).get<int>();
      rec.reward = doc.at("r").get<double>();
      rec.new_cover = doc.at("new_cover").get<std::vector<std::size_t>>();
      rec.collision = doc.at("collision").get<bool>();
      log.steps.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed episode log at line " + std::to_string(line_no) + ": " +
                    e.what());
    }
  }
  if (!meta_seen) throw IoError("episode log is empty (no meta line)");
  return loaded;
}

LoadedEpisode read_episode_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open episode log: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return episode_log_from_jsonl(buffer.str());
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json doc;
  doc["config_hash"] = manifest.config_hash;
  doc["code_version"] = manifest.code_version;
  doc["wall_clock_utc"] = manifest.wall_clock_utc;
  auto& files = doc["files"] = nlohmann::json::array();
  for (const auto& [file, hash] : manifest.files) {
    files.push_back({{"path", file}, {"hash", hash}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open manifest for writing: " + path);
  out << doc.dump(2) << "\n";
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
  RunManifest manifest;
  manifest.config_hash = doc.at("config_hash").get<std::string>();
  manifest.code_version = doc.at("code_version").get<std::string>();
  manifest.wall_clock_utc = doc.at("wall_clock_utc").get<std::string>();
  for (const auto& f : doc.at("files")) {
    manifest.files.emplace_back(f.at("path").get<std::string>(),
                                f.at("hash").get<std::string>());
  }
  return manifest;
}

bool verify_manifest(const RunManifest& manifest, const std::string& base_dir) {
  for (const auto& [file, hash] : manifest.files) {
    const std::filesystem::path p = std::filesystem::path(base_dir) / file;
    std::error_code ec;
    if (!std::filesystem::exists(p, ec)) return false;
    if (hash_file(p.string()) != hash) return false;
  }
  return true;
}

}  // namespace covplan
