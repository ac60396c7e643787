#include "adaptivemon/rules/planner.hpp"

#include <algorithm>
#include <numeric>

#include <spdlog/spdlog.h>

#include "adaptivemon/state_engine.hpp"

namespace adaptivemon::rules {

namespace {

const std::string& indicator_of(const Condition& c) {
  return std::visit([](const auto& x) -> const std::string& { return x.indicator; }, c);
}

}  // namespace

bool evaluate_condition(const Condition& c, const KnowledgeBase& kb, std::set<std::string>* unknown) {
  const std::string& name = indicator_of(c);
  if (!kb.has_indicator(name)) {
    if (unknown) unknown->insert(name);
    return false;
  }
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StateCheck>) {
          auto latest = kb.latest_states(name);
          if (!latest) return false;
          return latest->states.contains(x.state) != x.negated;
        } else if constexpr (std::is_same_v<T, StreakCheck>) {
          const auto history = kb.state_history(name, kb.retention());
          const auto n = static_cast<std::int64_t>(streak(history, x.state));
          return compare(n, x.cmp, x.count);
        } else {
          const auto& cfg = kb.config();
          const double v = x.param == Parameter::rate ? cfg.interval(name) : (cfg.is_enabled(name) ? 1.0 : 0.0);
          return compare(v, x.cmp, x.value);
        }
      },
      c);
}

Plan plan_tick(const RuleSet& rules, const KnowledgeBase& kb, std::uint64_t tick) {
  Plan plan;
  std::vector<std::size_t> order(rules.rules.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rule& ra = rules.rules[a];
    const Rule& rb = rules.rules[b];
    if (ra.salience != rb.salience) return ra.salience > rb.salience;
    return ra.name < rb.name;
  });

  for (std::size_t idx : order) {
    const Rule& r = rules.rules[idx];
    // evaluate every condition so that all unknown indicators get reported
    bool holds = true;
    for (const auto& c : r.conditions) holds = evaluate_condition(c, kb, &plan.unknown_indicators) && holds;
    if (!holds) continue;
    plan.fired.push_back({tick, r.name, r.salience});
    for (std::size_t a = 0; a < r.actions.size(); ++a) {
      plan.queue.push_back({r.actions[a], r.salience, r.name, idx, a, plan.queue.size()});
    }
  }
  for (const auto& name : plan.unknown_indicators) {
    spdlog::debug("tick {}: rule condition references unknown indicator '{}'", tick, name);
  }
  return plan;
}

std::string action_target(const Action& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ChangeRateProportional> || std::is_same_v<T, ChangeRateTo>) {
          return "rate:" + x.indicator;
        } else {
          return "selection";
        }
      },
      a);
}

}  // namespace adaptivemon::rules
