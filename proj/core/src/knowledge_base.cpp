#include "adaptivemon/knowledge_base.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon {

namespace {

template <typename T>
std::vector<T> tail(const std::deque<T>& items, std::size_t n) {
  if (n == 0) throw std::invalid_argument("requested window must be >= 1");
  const std::size_t take = std::min(n, items.size());
  return {items.end() - static_cast<std::ptrdiff_t>(take), items.end()};
}

std::string join(const std::vector<std::string>& names) {
  return fmt::format("{}", fmt::join(names, ","));
}

}  // namespace

KnowledgeBase::KnowledgeBase(PeerConfig config, std::size_t retention)
    : config_(std::move(config)), retention_(retention) {
  if (retention_ < 1) throw ConfigError("retention must be >= 1");
  config_.validate();
}

void KnowledgeBase::register_indicator(const Indicator& indicator, const StateConfig& state_config,
                                       std::optional<double> interval) {
  if (indicator.name.empty()) throw ConfigError("indicator name must be non-empty");
  if (series_.contains(indicator.name)) {
    throw ConfigError(fmt::format("indicator '{}' registered twice", indicator.name));
  }
  state_config.validate();
  if (!config_.is_registered(indicator.name)) {
    config_.add_indicator(indicator.name, interval.value_or(config_.bounds.r_max));
  } else if (interval) {
    config_.set_interval(indicator.name, *interval);
  }
  series_.emplace(indicator.name, Series{indicator, state_config, {}, {}, std::nullopt, std::nullopt});
}

bool KnowledgeBase::has_indicator(std::string_view name) const { return series_.contains(name); }

const Indicator& KnowledgeBase::indicator(std::string_view name) const { return series(name).indicator; }

const StateConfig& KnowledgeBase::state_config(std::string_view name) const {
  return series(name).state_config;
}

std::vector<std::string> KnowledgeBase::indicator_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : series_) out.push_back(name);
  return out;
}

void KnowledgeBase::append(std::string_view name, Sample s) {
  Series& ser = series(name);
  if (ser.last_timestamp && !(s.timestamp > *ser.last_timestamp)) {
    throw MonotonicityError(fmt::format("indicator '{}': timestamp {} not after {}", name, s.timestamp,
                                        *ser.last_timestamp));
  }
  const bool numeric = std::holds_alternative<double>(s.value);
  if (numeric != (ser.indicator.kind == IndicatorKind::numerical)) {
    throw ConfigError(fmt::format("indicator '{}': value kind does not match {} indicator", name,
                                  to_string(ser.indicator.kind)));
  }
  ser.last_timestamp = s.timestamp;
  ser.samples.push_back(std::move(s));
  while (ser.samples.size() > retention_) ser.samples.pop_front();
}

std::vector<Sample> KnowledgeBase::recent(std::string_view name, std::size_t n) const {
  return tail(series(name).samples, n);
}

std::size_t KnowledgeBase::sample_count(std::string_view name) const { return series(name).samples.size(); }

std::optional<Sample> KnowledgeBase::latest(std::string_view name) const {
  const auto& s = series(name).samples;
  if (s.empty()) return std::nullopt;
  return s.back();
}

void KnowledgeBase::append_states(std::string_view name, StateEntry entry) {
  Series& ser = series(name);
  if (!ser.states.empty() && !(entry.timestamp > ser.states.back().timestamp)) {
    throw MonotonicityError(fmt::format("indicator '{}': state timestamp {} not after {}", name,
                                        entry.timestamp, ser.states.back().timestamp));
  }
  ser.states.push_back(entry);
  while (ser.states.size() > retention_) ser.states.pop_front();
}

std::vector<StateSet> KnowledgeBase::state_history(std::string_view name, std::size_t n) const {
  const auto entries = tail(series(name).states, n);
  std::vector<StateSet> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.states);
  return out;
}

std::optional<StateEntry> KnowledgeBase::latest_states(std::string_view name) const {
  const auto& s = series(name).states;
  if (s.empty()) return std::nullopt;
  return s.back();
}

std::size_t KnowledgeBase::state_count(std::string_view name) const { return series(name).states.size(); }

ConfigEvent KnowledgeBase::apply_config(const ConfigChange& change, double timestamp) {
  ConfigEvent event;
  event.timestamp = timestamp;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SetInterval>) {
          auto r = config_.set_interval(c.indicator, c.seconds);
          event.clamped = r.clamped;
          event.description = fmt::format("interval {}: {} -> {}{}", c.indicator, r.before, r.after,
                                          r.clamped ? fmt::format(" (requested {}, clamped)", c.seconds) : "");
        } else if constexpr (std::is_same_v<T, KeepIndicators>) {
          config_.select_keep(c.names);
          event.description = fmt::format("keep {}", join(c.names));
        } else if constexpr (std::is_same_v<T, DropIndicators>) {
          config_.select_drop(c.names);
          event.description = fmt::format("drop {}", join(c.names));
        } else {
          config_.select_all();
          event.description = "enable all";
        }
      },
      change);
  record(event);
  return event;
}

void KnowledgeBase::replace_config(PeerConfig next, double timestamp, std::string reason) {
  next.validate();
  if (next == config_) return;
  config_ = std::move(next);
  record(ConfigEvent{timestamp, std::move(reason), false});
}

std::optional<Aggregate> KnowledgeBase::last_sent(std::string_view name) const { return series(name).last_sent; }

void KnowledgeBase::set_last_sent(std::string_view name, Aggregate stats) { series(name).last_sent = stats; }

KnowledgeBase::Series& KnowledgeBase::series(std::string_view name) {
  auto it = series_.find(name);
  if (it == series_.end()) throw UnknownIndicatorError(std::string(name));
  return it->second;
}

const KnowledgeBase::Series& KnowledgeBase::series(std::string_view name) const {
  auto it = series_.find(name);
  if (it == series_.end()) throw UnknownIndicatorError(std::string(name));
  return it->second;
}

void KnowledgeBase::record(ConfigEvent event) {
  events_.push_back(std::move(event));
  while (events_.size() > retention_) events_.pop_front();
}

}  // namespace adaptivemon
