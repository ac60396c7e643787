#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "adaptivemon/harness/scenario.hpp"

namespace adaptivemon::harness {

struct TracePoint {
  double t = 0.0;
  double value = 0.0;

  bool operator==(const TracePoint&) const = default;
};

/// Value of the latest point at or before each grid second 0..grid-1;
/// nullopt before the first point. `trace` must be sorted by time.
std::vector<std::optional<double>> zero_order_hold(std::span<const TracePoint> trace, std::size_t grid);

/// Root mean square of pointwise differences. Throws std::invalid_argument on
/// a length mismatch or empty input.
double rmse(std::span<const double> reconstructed, std::span<const double> reference);

/// Same, skipping grid points where the reconstruction has no value yet.
/// Throws std::invalid_argument when no point overlaps.
double rmse(std::span<const std::optional<double>> reconstructed, std::span<const double> reference);

/// Percentage of segments holding at least one sample >= threshold.
/// nullopt when there are no segments.
std::optional<double> spike_detection_rate(std::span<const TracePoint> samples,
                                           std::span<const SpikeSegment> segments, double threshold = 0.9);

}  // namespace adaptivemon::harness
