#pragma once

#include <cstdint>
#include <random>

namespace lps {

/// splitmix64 finalizer; mixes (seed, index) into an independent substream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator with platform-independent uniform and normal draws.
/// std::*_distribution is implementation-defined, so the conversions from raw
/// 64-bit output are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Generator for trial `index` of a run seeded with `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix_seed(seed, index));
  }

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lps
