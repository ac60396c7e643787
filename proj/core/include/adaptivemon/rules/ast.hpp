#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adaptivemon/types.hpp"

namespace adaptivemon::rules {

enum class Comparator { ge, le, eq };

std::string_view to_string(Comparator cmp) noexcept;

template <typename T>
bool compare(const T& lhs, Comparator cmp, const T& rhs) {
  switch (cmp) {
    case Comparator::ge:
      return lhs >= rhs;
    case Comparator::le:
      return lhs <= rhs;
    case Comparator::eq:
      return lhs == rhs;
  }
  return false;
}

enum class Parameter { rate, enabled };

std::string_view to_string(Parameter p) noexcept;

/// `indicator "x" [not] in state S`
struct StateCheck {
  std::string indicator;
  LogicalState state = LogicalState::stable;
  bool negated = false;

  bool operator==(const StateCheck&) const = default;
};

/// `streak("x", S) CMP n`
struct StreakCheck {
  std::string indicator;
  LogicalState state = LogicalState::stable;
  Comparator cmp = Comparator::ge;
  std::int64_t count = 0;

  bool operator==(const StreakCheck&) const = default;
};

/// `param rate|enabled("x") CMP v`. `rate` reads the sampling interval in
/// seconds; `enabled` reads 1 or 0.
struct ParamCheck {
  Parameter param = Parameter::rate;
  std::string indicator;
  Comparator cmp = Comparator::ge;
  double value = 0.0;

  bool operator==(const ParamCheck&) const = default;
};

using Condition = std::variant<StateCheck, StreakCheck, ParamCheck>;

struct ChangeRateProportional {
  std::string indicator;

  bool operator==(const ChangeRateProportional&) const = default;
};

struct ChangeRateTo {
  std::string indicator;
  double seconds = 0.0;

  bool operator==(const ChangeRateTo&) const = default;
};

struct SelectKeep {
  std::vector<std::string> indicators;

  bool operator==(const SelectKeep&) const = default;
};

struct SelectDrop {
  std::vector<std::string> indicators;

  bool operator==(const SelectDrop&) const = default;
};

struct SelectAll {
  bool operator==(const SelectAll&) const = default;
};

using Action = std::variant<ChangeRateProportional, ChangeRateTo, SelectKeep, SelectDrop, SelectAll>;

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Rule {
  std::string name;
  std::int64_t salience = 0;
  std::vector<Condition> conditions;
  std::vector<Action> actions;
  SourcePos pos;

  /// Structural equality; source positions are ignored.
  bool operator==(const Rule& other) const {
    return name == other.name && salience == other.salience && conditions == other.conditions &&
           actions == other.actions;
  }
};

struct RuleSet {
  std::vector<Rule> rules;

  bool operator==(const RuleSet&) const = default;
};

}  // namespace adaptivemon::rules
