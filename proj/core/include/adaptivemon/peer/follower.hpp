#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adaptivemon/adaptation.hpp"
#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/peer/messages.hpp"
#include "adaptivemon/rules/ast.hpp"
#include "adaptivemon/rules/planner.hpp"

namespace adaptivemon::peer {

/// Reads the current value of one indicator. Throws on failure.
using Probe = std::function<Value(double now)>;

/// A lower-tier peer: probes its indicators, runs the MAPE-K loop and pushes
/// Reports to its Leader. Transport-agnostic; runtimes call cycle() and ship
/// the returned messages.
class Follower {
 public:
  struct Options {
    /// When false the rule engine is skipped and intervals never change.
    bool adaptive = true;
    /// Cap on the in-memory fired-rule and effect logs.
    std::size_t log_capacity = 10000;
  };

  Follower(std::string node, KnowledgeBase kb, rules::RuleSet rules);
  Follower(std::string node, KnowledgeBase kb, rules::RuleSet rules, Options opts);

  const std::string& node() const noexcept { return node_; }

  void attach_probe(const std::string& indicator, Probe probe);

  Register register_message() const { return Register{node_, Role::follower}; }
  Bye bye_message() const { return Bye{node_}; }

  /// One MAPE-K pass at time `now`: probes every enabled indicator that is
  /// due, analyzes, plans and executes once, then emits Reports for the
  /// probed indicators that are still enabled and pass the sensitivity test.
  std::vector<Message> cycle(double now);

  /// Earliest time an enabled indicator is due; nullopt with none enabled.
  std::optional<double> next_due() const;

  const KnowledgeBase& kb() const noexcept { return kb_; }
  std::uint64_t ticks() const noexcept { return tick_; }
  const std::vector<rules::FiredRule>& fired() const noexcept { return fired_; }
  const std::vector<AppliedEffect>& effects() const noexcept { return effects_; }

  /// Called for every successfully probed sample.
  std::function<void(const std::string&, const Sample&)> on_sample;
  /// Called at the end of every cycle that probed something.
  std::function<void(double)> on_cycle;

 private:
  std::string node_;
  KnowledgeBase kb_;
  rules::RuleSet rules_;
  Options opts_;
  std::map<std::string, Probe, std::less<>> probes_;
  std::map<std::string, double, std::less<>> due_;
  std::set<std::string> warned_unknown_;
  std::uint64_t tick_ = 0;
  std::vector<rules::FiredRule> fired_;
  std::vector<AppliedEffect> effects_;
};

}  // namespace adaptivemon::peer
