#pragma once

#include <cstdint>
#include <random>

namespace rhg {

/// (master_seed, stream_id) fully determines the randomness of one trial.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic stream: a 64-bit Mersenne twister keyed by a splitmix64 hash
/// of the seed pair, so neighbouring stream ids give unrelated sequences.
class Rng {
 public:
  explicit Rng(RngSeed seed)
      : engine_(splitmix64(splitmix64(seed.master_seed) ^ splitmix64(~seed.stream_id))) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t poisson(double mean) {
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rhg
