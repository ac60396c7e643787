#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adaptivemon {

enum class IndicatorKind { categorical, numerical };

std::string_view to_string(IndicatorKind kind) noexcept;
std::optional<IndicatorKind> parse_indicator_kind(std::string_view text) noexcept;

struct Indicator {
  std::string name;
  IndicatorKind kind = IndicatorKind::numerical;
};

/// A probed value: a number for numerical indicators, a token for categorical ones.
using Value = std::variant<double, std::string>;

/// Timestamps are virtual seconds since experiment start, supplied by the runtime.
struct Sample {
  double timestamp = 0.0;
  Value value;

  bool operator==(const Sample&) const = default;
};

enum class LogicalState : std::uint8_t { stable, unstable, too_high, high, normal, low, too_low };

inline constexpr std::size_t kLogicalStateCount = 7;

std::string_view to_string(LogicalState state) noexcept;
std::optional<LogicalState> parse_logical_state(std::string_view text) noexcept;
bool is_level_state(LogicalState state) noexcept;

/// Set of logical states valid at one timestamp.
class StateSet {
 public:
  constexpr StateSet() = default;
  StateSet(std::initializer_list<LogicalState> states);

  void insert(LogicalState state) noexcept { bits_ |= mask(state); }
  void erase(LogicalState state) noexcept { bits_ &= static_cast<std::uint8_t>(~mask(state)); }
  bool contains(LogicalState state) const noexcept { return (bits_ & mask(state)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept;

  /// True when every state in this set is also in `other`.
  bool is_subset_of(StateSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  /// States in enumeration order.
  std::vector<LogicalState> states() const;

  std::uint8_t bits() const noexcept { return bits_; }

  bool operator==(const StateSet&) const = default;

 private:
  static constexpr std::uint8_t mask(LogicalState s) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(s));
  }

  std::uint8_t bits_ = 0;
};

std::string to_string(StateSet set);

/// Parameters of the state abstraction for one indicator.
///
/// The level thresholds split the real line into five disjoint intervals:
/// too_low (-inf, too_low], low (too_low, low], normal (low, high),
/// high [high, too_high) and too_high [too_high, +inf).
struct StateConfig {
  std::size_t k = 5;
  double p = 0.8;
  double delta_max = 0.05;
  double too_low = 0.1;
  double low = 0.3;
  double high = 0.7;
  double too_high = 0.9;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;

  /// k=5, p=0.8, delta_max at 5% of the range, thresholds at 10/30/70/90%.
  static StateConfig defaults_for_range(double lo, double hi);

  bool operator==(const StateConfig&) const = default;
};

struct RateBounds {
  double r_min = 30.0;
  double r_max = 60.0;

  void validate() const;
  double clamp(double interval) const noexcept;

  bool operator==(const RateBounds&) const = default;
};

struct GossipSettings {
  double period = 30.0;
  std::size_t fanout = 2;

  bool operator==(const GossipSettings&) const = default;
};

/// The actuation surface of a peer: what it samples and how often.
class PeerConfig {
 public:
  struct IntervalChange {
    double before = 0.0;
    double after = 0.0;
    bool clamped = false;
  };

  RateBounds bounds;
  /// Relative change needed before a new report is sent. nullopt disables
  /// differential updates, so every probe is reported.
  std::optional<double> sensitivity = 0.10;
  std::size_t window = 20;
  GossipSettings gossip;

  /// Registers and enables an indicator. The interval is clamped to the bounds.
  void add_indicator(const std::string& name, double interval);

  bool is_registered(std::string_view name) const;
  bool is_enabled(std::string_view name) const;
  double interval(std::string_view name) const;

  const std::map<std::string, double, std::less<>>& intervals() const noexcept { return intervals_; }
  const std::set<std::string, std::less<>>& enabled() const noexcept { return enabled_; }
  std::vector<std::string> registered() const;

  /// Sets the interval, clamped into [r_min, r_max].
  IntervalChange set_interval(std::string_view name, double seconds);

  /// Replaces the bounds and re-clamps every interval.
  void set_bounds(RateBounds b);

  /// Enabled set becomes `names` intersected with the registered set.
  /// Throws ConfigError if that would leave nothing enabled.
  void select_keep(const std::vector<std::string>& names);
  /// Throws UnknownIndicatorError for unregistered names, ConfigError if nothing would remain.
  void select_drop(const std::vector<std::string>& names);
  void select_all();

  void validate() const;

  bool operator==(const PeerConfig&) const = default;

 private:
  std::map<std::string, double, std::less<>> intervals_;
  std::set<std::string, std::less<>> enabled_;
};

}  // namespace adaptivemon
