#pragma once

#include <cstdint>
#include <random>

namespace bclab {

/// Seed material for one independent random stream: (master seed, stream
/// index). Paths are generated from RngState{seed, path_index}.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 keyed by a splitmix64 mix of (seed, stream). The engine is fully
/// specified by the standard, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(RngState state);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bclab
