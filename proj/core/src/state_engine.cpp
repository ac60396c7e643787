#include "adaptivemon/state_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon {

namespace {

void check_window(std::size_t size, const StateConfig& cfg) {
  if (size != cfg.k + 1) {
    throw WindowError(fmt::format("window has {} values, expected k+1 = {}", size, cfg.k + 1));
  }
}

// count >= p*k in real arithmetic; the slack only absorbs rounding in p*k.
bool meets_tolerance(std::size_t count, const StateConfig& cfg) {
  const double needed = cfg.p * static_cast<double>(cfg.k);
  return static_cast<double>(count) >= needed - 1e-9;
}

bool in_level(double v, LogicalState level, const StateConfig& cfg) {
  switch (level) {
    case LogicalState::too_high:
      return v >= cfg.too_high;
    case LogicalState::high:
      return v >= cfg.high && v < cfg.too_high;
    case LogicalState::normal:
      return v > cfg.low && v < cfg.high;
    case LogicalState::low:
      return v > cfg.too_low && v <= cfg.low;
    case LogicalState::too_low:
      return v <= cfg.too_low;
    default:
      return false;
  }
}

constexpr std::array kLevels = {LogicalState::too_high, LogicalState::high, LogicalState::normal,
                                LogicalState::low, LogicalState::too_low};

}  // namespace

StateSet classify_categorical(std::span<const std::string> window, const StateConfig& cfg) {
  check_window(window.size(), cfg);
  const auto& current = window.back();
  const bool stable = std::all_of(window.begin(), window.end(), [&](const auto& v) { return v == current; });
  return StateSet{stable ? LogicalState::stable : LogicalState::unstable};
}

StateSet classify_numerical(std::span<const double> window, const StateConfig& cfg) {
  check_window(window.size(), cfg);
  cfg.validate();

  std::size_t small_steps = 0;
  for (std::size_t x = 1; x < window.size(); ++x) {
    if (std::abs(window[x] - window[x - 1]) <= cfg.delta_max) ++small_steps;
  }
  const bool last_small = std::abs(window[cfg.k] - window[cfg.k - 1]) <= cfg.delta_max;

  StateSet out;
  out.insert(meets_tolerance(small_steps, cfg) && last_small ? LogicalState::stable : LogicalState::unstable);

  const double current = window.back();
  for (auto level : kLevels) {
    if (!in_level(current, level, cfg)) continue;
    const auto members = static_cast<std::size_t>(
        std::count_if(window.begin(), window.end(), [&](double v) { return in_level(v, level, cfg); }));
    if (meets_tolerance(members, cfg)) out.insert(level);
    break;  // the current value lies in exactly one interval
  }
  return out;
}

StateSet analyze(KnowledgeBase& kb, std::string_view indicator, const StateConfig& cfg) {
  const auto samples = kb.recent(indicator, cfg.k + 1);
  if (samples.size() < cfg.k + 1) return {};

  const double ts = samples.back().timestamp;
  if (auto last = kb.latest_states(indicator); last && last->timestamp >= ts) return {};

  StateSet states;
  if (kb.indicator(indicator).kind == IndicatorKind::numerical) {
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples) values.push_back(std::get<double>(s.value));
    states = classify_numerical(values, cfg);
  } else {
    std::vector<std::string> values;
    values.reserve(samples.size());
    for (const auto& s : samples) values.push_back(std::get<std::string>(s.value));
    states = classify_categorical(values, cfg);
  }
  kb.append_states(indicator, StateEntry{ts, states});
  return states;
}

StateSet analyze(KnowledgeBase& kb, std::string_view indicator) {
  return analyze(kb, indicator, kb.state_config(indicator));
}

std::size_t streak(std::span<const StateSet> history, LogicalState state) noexcept {
  std::size_t n = 0;
  for (auto it = history.rbegin(); it != history.rend() && it->contains(state); ++it) ++n;
  return n;
}

}  // namespace adaptivemon
