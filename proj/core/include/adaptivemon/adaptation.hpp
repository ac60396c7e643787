#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/rules/planner.hpp"
#include "adaptivemon/types.hpp"

namespace adaptivemon {

/// Record of one executed (or discarded) action.
struct AppliedEffect {
  std::uint64_t tick = 0;
  std::string rule;
  std::string target;  // "rate:<indicator>" or "selection"
  std::string before;
  std::string after;
  bool clamped = false;
  bool error = false;
  bool discarded = false;
  std::string message;
};

/// Sampling interval for an indicator that has been in `state` for `streak`
/// consecutive classifications. With s = min(streak, k) / k, stable maps to
/// r_min + (r_max - r_min) * s and unstable to r_max - (r_max - r_min) * s.
/// Level states map to r_min.
double compute_indicator_rate(LogicalState state, std::size_t streak, const RateBounds& bounds, std::size_t k);

/// Sets the interval of an enabled indicator, clamped to the bounds. Disabled
/// or unknown indicators yield an effect with `error` set and no change.
AppliedEffect apply_change_rate(PeerConfig& cfg, std::string_view indicator, double interval);

using SelectDirective = std::variant<rules::SelectKeep, rules::SelectDrop, rules::SelectAll>;

/// Changes the enabled set. A directive that would leave nothing enabled, or
/// names an unknown indicator to drop, yields an error effect and no change.
AppliedEffect apply_select_indicators(PeerConfig& cfg, const SelectDirective& directive);

/// Dominant stability state of an indicator and how long it has held.
struct RateContext {
  LogicalState state = LogicalState::stable;
  std::size_t streak = 0;
  std::size_t k = 1;
};

using RateContextLookup = std::function<std::optional<RateContext>(std::string_view)>;

/// Looks the context up in a knowledge base: stable if the latest set has it,
/// otherwise unstable; nullopt during warm-up.
RateContextLookup rate_context_from(const KnowledgeBase& kb);

/// Applies the queue in order. The first action on a given target wins; later
/// ones on the same target are discarded. Errors never stop the queue.
std::vector<AppliedEffect> execute(std::span<const rules::PlannedAction> queue, PeerConfig& cfg,
                                   const RateContextLookup& context, std::uint64_t tick = 0);

}  // namespace adaptivemon
