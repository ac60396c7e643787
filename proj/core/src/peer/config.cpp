#include "adaptivemon/peer/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "adaptivemon/error.hpp"

namespace adaptivemon::peer {

using nlohmann::json;

namespace {

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(fmt::format("{}.{} must be a number", where, key));
  return v.get<double>();
}

std::size_t count(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(fmt::format("{}.{} must be a non-negative integer", where, key));
  return v.get<std::size_t>();
}

IndicatorSpec indicator_from(const json& j, std::size_t idx) {
  const std::string where = fmt::format("indicators[{}]", idx);
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  IndicatorSpec spec;
  if (!j.contains("name") || !j["name"].is_string()) throw ConfigError(where + ".name must be a string");
  spec.indicator.name = j["name"].get<std::string>();
  if (j.contains("kind")) {
    auto kind = j["kind"].is_string() ? parse_indicator_kind(j["kind"].get<std::string>()) : std::nullopt;
    if (!kind) throw ConfigError(where + ".kind must be \"numerical\" or \"categorical\"");
    spec.indicator.kind = *kind;
  }
  if (j.contains("range")) {
    const auto& r = j["range"];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
      throw ConfigError(where + ".range must be [lo, hi]");
    }
    spec.range_lo = r[0].get<double>();
    spec.range_hi = r[1].get<double>();
  }
  if (!(spec.range_lo < spec.range_hi)) throw ConfigError(where + ".range must have lo < hi");
  spec.state = StateConfig::defaults_for_range(spec.range_lo, spec.range_hi);
  if (j.contains("state")) {
    const auto& s = j["state"];
    if (!s.is_object()) throw ConfigError(where + ".state must be an object");
    const std::string sw = where + ".state";
    if (s.contains("k")) spec.state.k = count(s, "k", sw);
    if (s.contains("p")) spec.state.p = number(s, "p", sw);
    if (s.contains("delta_max")) spec.state.delta_max = number(s, "delta_max", sw);
    if (s.contains("too_low")) spec.state.too_low = number(s, "too_low", sw);
    if (s.contains("low")) spec.state.low = number(s, "low", sw);
    if (s.contains("high")) spec.state.high = number(s, "high", sw);
    if (s.contains("too_high")) spec.state.too_high = number(s, "too_high", sw);
  }
  spec.state.validate();
  if (j.contains("interval")) spec.interval = number(j, "interval", where);
  if (j.contains("source")) {
    if (!j["source"].is_string()) throw ConfigError(where + ".source must be a string");
    spec.source = j["source"].get<std::string>();
  }
  return spec;
}

}  // namespace

KnowledgeBase PeerSettings::make_knowledge_base(std::size_t retention) const {
  KnowledgeBase kb(config, retention);
  for (const auto& spec : indicators) kb.register_indicator(spec.indicator, spec.state, spec.interval);
  return kb;
}

PeerSettings parse_peer_settings(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("malformed peer configuration: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("peer configuration must be a JSON object");

  PeerSettings out;
  if (!j.contains("indicators") || !j["indicators"].is_array() || j["indicators"].empty()) {
    throw ConfigError("indicators must be a non-empty list");
  }
  if (j.contains("bounds")) {
    const auto& b = j["bounds"];
    if (!b.is_object() || !b.contains("r_min") || !b.contains("r_max")) {
      throw ConfigError("bounds must be {\"r_min\": .., \"r_max\": ..}");
    }
    out.config.bounds = {number(b, "r_min", "bounds"), number(b, "r_max", "bounds")};
    out.config.bounds.validate();
  }
  if (j.contains("sensitivity")) {
    const auto& s = j["sensitivity"];
    if (s.is_null()) {
      out.config.sensitivity.reset();
    } else if (s.is_number()) {
      out.config.sensitivity = s.get<double>();
    } else {
      throw ConfigError("sensitivity must be a number or null");
    }
  }
  if (j.contains("window")) out.config.window = count(j, "window", "config");
  if (j.contains("gossip")) {
    const auto& g = j["gossip"];
    if (!g.is_object()) throw ConfigError("gossip must be an object");
    if (g.contains("period")) out.config.gossip.period = number(g, "period", "gossip");
    if (g.contains("fanout")) out.config.gossip.fanout = count(g, "fanout", "gossip");
  }

  std::set<std::string> names;
  for (std::size_t i = 0; i < j["indicators"].size(); ++i) {
    auto spec = indicator_from(j["indicators"][i], i);
    if (!names.insert(spec.indicator.name).second) {
      throw ConfigError(fmt::format("indicator '{}' declared twice", spec.indicator.name));
    }
    out.indicators.push_back(std::move(spec));
  }
  // validates bounds, sensitivity, window and gossip together
  (void)out.make_knowledge_base();
  return out;
}

PeerSettings load_peer_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_peer_settings(buf.str());
}

}  // namespace adaptivemon::peer
