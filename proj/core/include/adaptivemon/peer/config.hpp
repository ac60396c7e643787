#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/types.hpp"

namespace adaptivemon::peer {

struct IndicatorSpec {
  Indicator indicator;
  double range_lo = 0.0;
  double range_hi = 1.0;
  StateConfig state;
  /// Initial sampling interval; r_max when absent.
  std::optional<double> interval;
  /// File to read the value from instead of the built-in system probe.
  std::optional<std::string> source;
};

/// Parsed peer configuration file.
///
///   {
///     "indicators": [{"name": "cpu", "kind": "numerical", "range": [0, 1],
///                     "state": {"k": 5, "p": 0.8, ...}, "interval": 60,
///                     "source": "/path"}],
///     "bounds": {"r_min": 30, "r_max": 60},
///     "sensitivity": 0.1,          // null disables differential updates
///     "window": 20,
///     "gossip": {"period": 30, "fanout": 2}
///   }
///
/// Missing state fields default to StateConfig::defaults_for_range(range).
struct PeerSettings {
  std::vector<IndicatorSpec> indicators;
  PeerConfig config;

  /// Knowledge base with every indicator registered and enabled.
  KnowledgeBase make_knowledge_base(std::size_t retention = KnowledgeBase::kDefaultRetention) const;
};

/// Throws ConfigError describing the offending key.
PeerSettings parse_peer_settings(std::string_view json_text);
PeerSettings load_peer_settings(const std::filesystem::path& path);

}  // namespace adaptivemon::peer
