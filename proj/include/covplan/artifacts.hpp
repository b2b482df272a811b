#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "covplan/config.hpp"
#include "covplan/learner.hpp"
#include "covplan/mdp_env.hpp"

namespace covplan {

// FNV-1a 64-bit content hash, reported as 16 hex digits. Used for manifest
// integrity bookkeeping and the q-table header, not for security.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_hex(const std::string& bytes);
std::string hash_file(const std::string& path);

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Versioned binary q-table: magic "CVPQ", format version, dimensions and the
// config hash, followed by the row-major float64 entries.
void save_qtable(const QTable& q, const std::string& path, std::uint64_t config_hash);
QTable load_qtable(const std::string& path, std::uint64_t* config_hash = nullptr);

// CSV debug dump of nonzero entries: state,action,value.
void dump_qtable_csv(const QTable& q, const std::string& path);

// episode,discounted_return,undiscounted_return,coverage_time,epsilon
void write_curve_csv(const LearningCurve& curve, const std::string& path);

// JSON-lines episode log: a meta line carrying the environment config, the
// object realization and the initial pose (so logs replay stand-alone), then
// one line per step:
// {"t", "x": [x,y], "s": [s_a,s_b,s_c], "a": [l_R,l_th,th_idx], "r",
//  "new_cover": [...], "collision"}.
std::string episode_log_to_jsonl(const EpisodeLog& log, const EnvConfig& env);
void write_episode_jsonl(const EpisodeLog& log, const EnvConfig& env,
                         const std::string& path);

struct LoadedEpisode {
  EpisodeLog log;
  EnvConfig env;
};

// Parses a JSONL document; throws IoError naming the first malformed line.
LoadedEpisode episode_log_from_jsonl(const std::string& text);
LoadedEpisode read_episode_jsonl(const std::string& path);

struct RunManifest {
  std::string config_hash;
  std::string code_version;
  std::string wall_clock_utc;
  std::vector<std::pair<std::string, std::string>> files;  // path, content hash
};

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);
// True iff every listed file exists and matches its recorded hash.
bool verify_manifest(const RunManifest& manifest, const std::string& base_dir);

inline constexpr const char* kCodeVersion = "covplan 0.1.0";

}  // namespace covplan
