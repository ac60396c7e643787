#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adaptivemon/types.hpp"

namespace adaptivemon {

/// Mean and population variance of a window of samples.
struct Aggregate {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t n = 0;

  bool operator==(const Aggregate&) const = default;
};

struct StateEntry {
  double timestamp = 0.0;
  StateSet states;

  bool operator==(const StateEntry&) const = default;
};

struct SetInterval {
  std::string indicator;
  double seconds = 0.0;
};
struct KeepIndicators {
  std::vector<std::string> names;
};
struct DropIndicators {
  std::vector<std::string> names;
};
struct EnableAllIndicators {};

using ConfigChange = std::variant<SetInterval, KeepIndicators, DropIndicators, EnableAllIndicators>;

struct ConfigEvent {
  double timestamp = 0.0;
  std::string description;
  bool clamped = false;
};

/// Per-peer store of raw samples, logical states, configuration and
/// last-sent report statistics. Owned by a single peer loop; not thread-safe.
class KnowledgeBase {
 public:
  static constexpr std::size_t kDefaultRetention = 1000;

  explicit KnowledgeBase(PeerConfig config = {}, std::size_t retention = kDefaultRetention);

  /// Registers an indicator. If the config does not yet know it, it is added
  /// (enabled) with `interval`, or r_max when no interval is given.
  void register_indicator(const Indicator& indicator, const StateConfig& state_config,
                          std::optional<double> interval = std::nullopt);

  bool has_indicator(std::string_view name) const;
  const Indicator& indicator(std::string_view name) const;
  const StateConfig& state_config(std::string_view name) const;
  std::vector<std::string> indicator_names() const;

  /// Throws MonotonicityError unless s.timestamp is after the last stored one.
  void append(std::string_view name, Sample s);

  /// Last min(n, stored) samples, oldest first.
  std::vector<Sample> recent(std::string_view name, std::size_t n) const;
  std::size_t sample_count(std::string_view name) const;
  std::optional<Sample> latest(std::string_view name) const;

  void append_states(std::string_view name, StateEntry entry);

  /// Last min(n, stored) state sets, oldest first.
  std::vector<StateSet> state_history(std::string_view name, std::size_t n) const;
  std::optional<StateEntry> latest_states(std::string_view name) const;
  std::size_t state_count(std::string_view name) const;

  const PeerConfig& config() const noexcept { return config_; }

  /// Applies one mutation. Out-of-bounds intervals are clamped and flagged.
  ConfigEvent apply_config(const ConfigChange& change, double timestamp);

  /// Swaps in a whole configuration, recording an event when it differs.
  void replace_config(PeerConfig next, double timestamp, std::string reason);

  const std::deque<ConfigEvent>& config_events() const noexcept { return events_; }

  std::optional<Aggregate> last_sent(std::string_view name) const;
  void set_last_sent(std::string_view name, Aggregate stats);

  std::size_t retention() const noexcept { return retention_; }

 private:
  struct Series {
    Indicator indicator;
    StateConfig state_config;
    std::deque<Sample> samples;
    std::deque<StateEntry> states;
    std::optional<double> last_timestamp;
    std::optional<Aggregate> last_sent;
  };

  Series& series(std::string_view name);
  const Series& series(std::string_view name) const;
  void record(ConfigEvent event);

  PeerConfig config_;
  std::size_t retention_;
  std::map<std::string, Series, std::less<>> series_;
  std::deque<ConfigEvent> events_;
};

}  // namespace adaptivemon
