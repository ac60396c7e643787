#include "adaptivemon/peer/follower.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "adaptivemon/error.hpp"
#include "adaptivemon/peer/report.hpp"
#include "adaptivemon/state_engine.hpp"

namespace adaptivemon::peer {

namespace {

constexpr double kDueSlack = 1e-9;

template <typename T>
void push_capped(std::vector<T>& log, T item, std::size_t cap) {
  log.push_back(std::move(item));
  if (log.size() > cap) log.erase(log.begin(), log.begin() + static_cast<std::ptrdiff_t>(log.size() - cap / 2));
}

}  // namespace

Follower::Follower(std::string node, KnowledgeBase kb, rules::RuleSet rules)
    : Follower(std::move(node), std::move(kb), std::move(rules), Options{}) {}

Follower::Follower(std::string node, KnowledgeBase kb, rules::RuleSet rules, Options opts)
    : node_(std::move(node)), kb_(std::move(kb)), rules_(std::move(rules)), opts_(opts) {
  if (node_.empty()) throw ConfigError("follower node id must be non-empty");
  for (const auto& name : kb_.indicator_names()) due_[name] = 0.0;
}

void Follower::attach_probe(const std::string& indicator, Probe probe) {
  if (!kb_.has_indicator(indicator)) throw UnknownIndicatorError(indicator);
  probes_[indicator] = std::move(probe);
}

std::vector<Message> Follower::cycle(double now) {
  std::vector<std::string> probed;
  for (const auto& name : kb_.config().enabled()) {
    if (due_.at(name) > now + kDueSlack) continue;
    auto it = probes_.find(name);
    try {
      if (it == probes_.end()) throw Error("no probe attached");
      Sample s{now, it->second(now)};
      kb_.append(name, s);
      if (on_sample) on_sample(name, s);
    } catch (const std::exception& e) {
      spdlog::warn("{}: probe '{}' failed at t={}: {}", node_, name, now, e.what());
      due_[name] = now + kb_.config().interval(name);
      continue;
    }
    analyze(kb_, name);
    probed.push_back(name);
  }
  if (probed.empty()) return {};

  ++tick_;
  if (opts_.adaptive && !rules_.rules.empty()) {
    auto plan = rules::plan_tick(rules_, kb_, tick_);
    for (const auto& name : plan.unknown_indicators) {
      if (warned_unknown_.insert(name).second) {
        spdlog::warn("{}: rules reference unknown indicator '{}'", node_, name);
      }
    }
    if (!plan.queue.empty()) {
      PeerConfig next = kb_.config();
      auto effects = execute(plan.queue, next, rate_context_from(kb_), tick_);
      kb_.replace_config(std::move(next), now, fmt::format("tick {}", tick_));
      for (auto& e : effects) push_capped(effects_, std::move(e), opts_.log_capacity);
    }
    for (auto& f : plan.fired) push_capped(fired_, std::move(f), opts_.log_capacity);
  }

  std::vector<Message> out;
  const PeerConfig& cfg = kb_.config();
  for (const auto& name : probed) {
    due_[name] = now + cfg.interval(name);
    if (!cfg.is_enabled(name) || kb_.indicator(name).kind != IndicatorKind::numerical) continue;
    const auto window = kb_.recent(name, cfg.window);
    const Aggregate agg = aggregate_window(window);
    if (!should_report(agg, kb_.last_sent(name), cfg.sensitivity)) continue;
    kb_.set_last_sent(name, agg);
    out.emplace_back(Report{node_, name, now, agg.mean, agg.variance, agg.n});
  }
  if (on_cycle) on_cycle(now);
  return out;
}

std::optional<double> Follower::next_due() const {
  std::optional<double> best;
  for (const auto& name : kb_.config().enabled()) {
    const double t = due_.at(name);
    if (!best || t < *best) best = t;
  }
  return best;
}

}  // namespace adaptivemon::peer
