#include "adaptivemon/peer/report.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace adaptivemon::peer {

namespace {

bool moved(double current, double last, double sensitivity) {
  const double delta = std::abs(current - last);
  if (last == 0.0) return delta > sensitivity;
  return delta / std::abs(last) > sensitivity;
}

}  // namespace

Aggregate aggregate_window(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate_window: empty window");
  const double n = static_cast<double>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, sq / n, values.size()};
}

Aggregate aggregate_window(std::span<const Sample> samples) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(std::get<double>(s.value));
  return aggregate_window(values);
}

bool should_report(const Aggregate& current, const std::optional<Aggregate>& last_sent,
                   std::optional<double> sensitivity) {
  if (!last_sent || !sensitivity) return true;
  return moved(current.mean, last_sent->mean, *sensitivity) ||
         moved(current.variance, last_sent->variance, *sensitivity);
}

}  // namespace adaptivemon::peer
