#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace adaptivemon {

/// Seeded generator with platform-independent output. std::mt19937_64 is
/// fully specified; the std distributions are not, so the mappings to reals
/// and indices are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  /// `count` distinct indices from [0, n), in selection order.
  std::vector<std::size_t> choose(std::size_t n, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent seeds from (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace adaptivemon
