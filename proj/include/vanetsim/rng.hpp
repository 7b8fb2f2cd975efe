#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace vanetsim {

// splitmix64 step, used to expand one master seed into stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Fixed per-subsystem derivation indices. Keeping the attacker on its own
// streams means enabling or disabling an attack never perturbs the draws
// seen by legitimate vehicles, so detector arms stay paired per seed.
enum class RngStream : std::size_t {
  Mobility = 0,         // legitimate placement, headings, speed resampling
  Channel = 1,          // per-hop jitter for legitimate packets
  Attacker = 2,         // attacker placement and emission schedules
  AttackerChannel = 3,  // per-hop jitter for attack packets
};

inline constexpr std::size_t kRngStreamCount = 4;

class RngStreams {
 public:
  explicit RngStreams(std::uint64_t seed) {
    for (std::size_t i = 0; i < kRngStreamCount; ++i) {
      std::uint64_t state = seed + 0x1000 * (i + 1);
      engines_[i].seed(splitmix64(state));
    }
  }

  std::mt19937_64& stream(RngStream s) { return engines_[static_cast<std::size_t>(s)]; }

  double uniform(RngStream s, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(stream(s));
  }

  // Uniform draw guaranteed strictly inside (lo, hi).
  double uniform_open(RngStream s, double lo, double hi) {
    double v = uniform(s, lo, hi);
    while (v <= lo || v >= hi) {
      v = uniform(s, lo, hi);
    }
    return v;
  }

 private:
  std::array<std::mt19937_64, kRngStreamCount> engines_;
};

}  // namespace vanetsim
