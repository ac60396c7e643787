#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/rules/ast.hpp"

namespace adaptivemon::rules {

struct PlannedAction {
  Action action;
  std::int64_t salience = 0;
  std::string rule;
  std::size_t rule_index = 0;    // declaration order of the rule
  std::size_t action_index = 0;  // position within the rule's consequent
  std::size_t sequence = 0;      // position in the tick's queue

  bool operator==(const PlannedAction&) const = default;
};

struct FiredRule {
  std::uint64_t tick = 0;
  std::string rule;
  std::int64_t salience = 0;

  bool operator==(const FiredRule&) const = default;
};

struct Plan {
  std::vector<PlannedAction> queue;
  std::vector<FiredRule> fired;
  /// Indicators referenced by a condition but not registered in the KB.
  std::set<std::string> unknown_indicators;
};

/// Evaluates one condition against the knowledge base. Unknown indicators
/// evaluate to false and are added to `unknown` when provided. With no state
/// history yet, a StateCheck is false whether negated or not.
bool evaluate_condition(const Condition& c, const KnowledgeBase& kb, std::set<std::string>* unknown = nullptr);

/// Fires every rule whose conditions all hold, once, and returns their actions
/// ordered by salience (desc), rule name (asc), then declaration order.
Plan plan_tick(const RuleSet& rules, const KnowledgeBase& kb, std::uint64_t tick = 0);

/// Target a planned action writes: "rate:<indicator>" or "selection".
std::string action_target(const Action& a);

}  // namespace adaptivemon::rules
