#pragma once

#include <optional>
#include <span>

#include "adaptivemon/knowledge_base.hpp"

namespace adaptivemon::peer {

/// Mean and population variance. Throws std::invalid_argument when empty.
Aggregate aggregate_window(std::span<const double> values);

/// Same over the numerical values of `samples`.
Aggregate aggregate_window(std::span<const Sample> samples);

/// Differential-update test. True when nothing was sent yet, when
/// `sensitivity` is nullopt, or when mean or variance moved by more than
/// `sensitivity` relative to the last sent value. Against a zero baseline the
/// absolute change is compared instead.
bool should_report(const Aggregate& current, const std::optional<Aggregate>& last_sent,
                   std::optional<double> sensitivity);

}  // namespace adaptivemon::peer
