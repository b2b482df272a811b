#pragma once

#include <cstdint>

namespace covplan {

// Deterministic splitmix64 generator. The standard <random> engines are
// portable but the distributions are not; this keeps every sampled value
// bit-identical across compilers and standard libraries, which the
// reproducibility contract (byte-identical logs for a given seed) relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, n). Multiply-shift; bias is ~n/2^64, irrelevant here.
  std::size_t uniform_below(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Named sub-streams so that object sampling, agent initialization,
// exploration and tie-breaking can be varied independently under one master
// seed.
enum class RngStream : std::uint64_t {
  kObjectSampling = 0x01,
  kAgentInit = 0x02,
  kExploration = 0x03,
  kTieBreak = 0x04,
  kEvalTieBreak = 0x05,
  kEvalInit = 0x06,
};

inline Rng make_stream(std::uint64_t master_seed, RngStream stream) {
  // One splitmix step decorrelates the stream seeds.
  Rng mixer(master_seed ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
  return Rng(mixer.next_u64());
}

}  // namespace covplan
