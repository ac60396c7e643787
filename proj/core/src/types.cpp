#include "adaptivemon/types.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon {

namespace {

constexpr std::string_view kStateNames[kLogicalStateCount] = {
    "stable", "unstable", "too_high", "high", "normal", "low", "too_low"};

}  // namespace

std::string_view to_string(IndicatorKind kind) noexcept {
  return kind == IndicatorKind::categorical ? "categorical" : "numerical";
}

std::optional<IndicatorKind> parse_indicator_kind(std::string_view text) noexcept {
  if (text == "categorical") return IndicatorKind::categorical;
  if (text == "numerical") return IndicatorKind::numerical;
  return std::nullopt;
}

std::string_view to_string(LogicalState state) noexcept {
  return kStateNames[static_cast<std::size_t>(state)];
}

std::optional<LogicalState> parse_logical_state(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kLogicalStateCount; ++i) {
    if (kStateNames[i] == text) return static_cast<LogicalState>(i);
  }
  return std::nullopt;
}

bool is_level_state(LogicalState state) noexcept {
  return state != LogicalState::stable && state != LogicalState::unstable;
}

StateSet::StateSet(std::initializer_list<LogicalState> states) {
  for (auto s : states) insert(s);
}

std::size_t StateSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<LogicalState> StateSet::states() const {
  std::vector<LogicalState> out;
  for (std::size_t i = 0; i < kLogicalStateCount; ++i) {
    auto s = static_cast<LogicalState>(i);
    if (contains(s)) out.push_back(s);
  }
  return out;
}

std::string to_string(StateSet set) {
  std::string out = "{";
  bool first = true;
  for (auto s : set.states()) {
    if (!first) out += ',';
    out += to_string(s);
    first = false;
  }
  out += '}';
  return out;
}

void StateConfig::validate() const {
  if (k < 1) throw ConfigError("state config: k must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("state config: p={} outside [0,1]", p));
  if (!(delta_max >= 0.0)) throw ConfigError("state config: delta_max must be >= 0");
  if (!(too_low < low && low < high && high < too_high)) {
    throw ConfigError(fmt::format(
        "state config: thresholds must satisfy too_low < low < high < too_high (got {}, {}, {}, {})",
        too_low, low, high, too_high));
  }
}

StateConfig StateConfig::defaults_for_range(double lo, double hi) {
  if (!(hi > lo)) throw ConfigError(fmt::format("indicator range [{}, {}] is empty", lo, hi));
  const double span = hi - lo;
  StateConfig c;
  c.k = 5;
  c.p = 0.8;
  c.delta_max = 0.05 * span;
  c.too_low = lo + 0.1 * span;
  c.low = lo + 0.3 * span;
  c.high = lo + 0.7 * span;
  c.too_high = lo + 0.9 * span;
  return c;
}

void RateBounds::validate() const {
  if (!(r_min > 0.0 && r_min <= r_max && std::isfinite(r_max))) {
    throw ConfigError(fmt::format("rate bounds must satisfy 0 < r_min <= r_max (got [{}, {}])", r_min, r_max));
  }
}

double RateBounds::clamp(double interval) const noexcept { return std::clamp(interval, r_min, r_max); }

void PeerConfig::add_indicator(const std::string& name, double interval) {
  if (name.empty()) throw ConfigError("indicator name must be non-empty");
  if (intervals_.contains(name)) throw ConfigError(fmt::format("indicator '{}' registered twice", name));
  if (!(interval > 0.0 && std::isfinite(interval))) {
    throw ConfigError(fmt::format("indicator '{}': interval must be positive", name));
  }
  intervals_.emplace(name, bounds.clamp(interval));
  enabled_.insert(name);
}

bool PeerConfig::is_registered(std::string_view name) const { return intervals_.contains(name); }

bool PeerConfig::is_enabled(std::string_view name) const { return enabled_.contains(name); }

double PeerConfig::interval(std::string_view name) const {
  auto it = intervals_.find(name);
  if (it == intervals_.end()) throw UnknownIndicatorError(std::string(name));
  return it->second;
}

std::vector<std::string> PeerConfig::registered() const {
  std::vector<std::string> out;
  out.reserve(intervals_.size());
  for (const auto& [name, _] : intervals_) out.push_back(name);
  return out;
}

PeerConfig::IntervalChange PeerConfig::set_interval(std::string_view name, double seconds) {
  auto it = intervals_.find(name);
  if (it == intervals_.end()) throw UnknownIndicatorError(std::string(name));
  if (!(seconds > 0.0) || std::isnan(seconds)) {
    throw ConfigError(fmt::format("indicator '{}': interval must be positive", name));
  }
  IntervalChange change;
  change.before = it->second;
  change.after = bounds.clamp(seconds);
  change.clamped = change.after != seconds;
  it->second = change.after;
  return change;
}

void PeerConfig::set_bounds(RateBounds b) {
  b.validate();
  bounds = b;
  for (auto& [_, iv] : intervals_) iv = bounds.clamp(iv);
}

void PeerConfig::select_keep(const std::vector<std::string>& names) {
  std::set<std::string, std::less<>> next;
  for (const auto& n : names) {
    if (intervals_.contains(n)) next.insert(n);
  }
  if (next.empty()) throw ConfigError("select_indicators keep: no registered indicator would remain enabled");
  enabled_ = std::move(next);
}

void PeerConfig::select_drop(const std::vector<std::string>& names) {
  auto next = enabled_;
  for (const auto& n : names) {
    if (!intervals_.contains(n)) throw UnknownIndicatorError(n);
    next.erase(n);
  }
  if (next.empty()) throw ConfigError("select_indicators drop: no indicator would remain enabled");
  enabled_ = std::move(next);
}

void PeerConfig::select_all() {
  enabled_.clear();
  for (const auto& [name, _] : intervals_) enabled_.insert(name);
}

void PeerConfig::validate() const {
  bounds.validate();
  if (sensitivity && !(*sensitivity >= 0.0)) throw ConfigError("sensitivity must be >= 0");
  if (window < 1) throw ConfigError("aggregation window must be >= 1");
  if (!(gossip.period > 0.0)) throw ConfigError("gossip period must be positive");
  if (gossip.fanout < 1) throw ConfigError("gossip fanout must be >= 1");
  for (const auto& name : enabled_) {
    double iv = interval(name);
    if (iv < bounds.r_min || iv > bounds.r_max) {
      throw ConfigError(fmt::format("indicator '{}': interval {} outside [{}, {}]", name, iv, bounds.r_min,
                                    bounds.r_max));
    }
  }
}

}  // namespace adaptivemon
