#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adaptivemon::harness {

/// Half-open interval [start, end) in seconds.
struct SpikeSegment {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const SpikeSegment&) const = default;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  double duration = 0.0;
  /// Ground truth on the 1 s grid, truth[i] holding over [i, i+1).
  std::vector<double> truth;
  std::vector<SpikeSegment> spikes;

  /// Ground truth at time t (zero-order hold on the grid).
  double value_at(double t) const;
};

/// stable, unstable, stable_unstable, random, spiky.
std::span<const std::string_view> scenario_names() noexcept;

/// Deterministic per (name, seed). Throws ConfigError for unknown names.
///
///   stable           0.8 and 0.83 alternating every 14 s, 600 s
///   unstable         reflected random walk in [0.5, 0.85], steps U(-0.05, 0.05), 600 s
///   stable_unstable  150 s stable and unstable phases alternating, 1200 s
///   random           U[0, 1) every second, 600 s
///   spiky            44 s blocks: 28 s at 0.3, 12 s U[0.2, 0.5), 4 s at 1.0; 600 s
Scenario gen_scenario(std::string_view name, std::uint64_t seed);

}  // namespace adaptivemon::harness
