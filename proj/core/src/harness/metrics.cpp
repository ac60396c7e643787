#include "adaptivemon/harness/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace adaptivemon::harness {

std::vector<std::optional<double>> zero_order_hold(std::span<const TracePoint> trace, std::size_t grid) {
  std::vector<std::optional<double>> out(grid);
  std::optional<double> current;
  std::size_t j = 0;
  for (std::size_t g = 0; g < grid; ++g) {
    while (j < trace.size() && trace[j].t <= static_cast<double>(g)) current = trace[j++].value;
    out[g] = current;
  }
  return out;
}

double rmse(std::span<const double> reconstructed, std::span<const double> reference) {
  if (reconstructed.size() != reference.size()) throw std::invalid_argument("rmse: length mismatch");
  if (reference.empty()) throw std::invalid_argument("rmse: empty series");
  double sum = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reconstructed[i] - reference[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(reference.size()));
}

double rmse(std::span<const std::optional<double>> reconstructed, std::span<const double> reference) {
  if (reconstructed.size() != reference.size()) throw std::invalid_argument("rmse: length mismatch");
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (!reconstructed[i]) continue;
    const double d = *reconstructed[i] - reference[i];
    sum += d * d;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("rmse: no overlapping points");
  return std::sqrt(sum / static_cast<double>(n));
}

std::optional<double> spike_detection_rate(std::span<const TracePoint> samples,
                                           std::span<const SpikeSegment> segments, double threshold) {
  if (segments.empty()) return std::nullopt;
  std::size_t detected = 0;
  for (const auto& seg : segments) {
    for (const auto& s : samples) {
      if (s.t >= seg.start && s.t < seg.end && s.value >= threshold) {
        ++detected;
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(detected) / static_cast<double>(segments.size());
}

}  // namespace adaptivemon::harness
