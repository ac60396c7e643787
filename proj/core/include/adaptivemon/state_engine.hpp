#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/types.hpp"

namespace adaptivemon {

/// {stable} iff all k+1 tokens are equal, otherwise {unstable}.
/// Throws WindowError unless window.size() == cfg.k + 1.
StateSet classify_categorical(std::span<const std::string> window, const StateConfig& cfg);

/// Numerical state abstraction over a window of k+1 values, oldest first.
///
/// stable:   at least p*k of the k consecutive steps are within delta_max,
///           and so is the most recent step. unstable is its complement.
/// level L:  at least p*k of the k+1 values lie in L's interval, and so does
///           the most recent value.
StateSet classify_numerical(std::span<const double> window, const StateConfig& cfg);

/// Classifies the newest window of an indicator and appends the result to its
/// state history. Returns the empty set (and stores nothing) during warm-up,
/// i.e. with fewer than k+1 samples, and when the newest sample was already
/// classified.
StateSet analyze(KnowledgeBase& kb, std::string_view indicator, const StateConfig& cfg);

/// Same, using the state config registered with the indicator.
StateSet analyze(KnowledgeBase& kb, std::string_view indicator);

/// Number of consecutive most-recent sets containing `state`.
std::size_t streak(std::span<const StateSet> history, LogicalState state) noexcept;

}  // namespace adaptivemon
