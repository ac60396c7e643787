#include "adaptivemon/adaptation.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "adaptivemon/error.hpp"
#include "adaptivemon/state_engine.hpp"

namespace adaptivemon {

namespace {

std::string enabled_string(const PeerConfig& cfg) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : cfg.enabled()) {
    if (!first) out += ',';
    out += n;
    first = false;
  }
  return out + "}";
}

}  // namespace

double compute_indicator_rate(LogicalState state, std::size_t streak, const RateBounds& bounds, std::size_t k) {
  bounds.validate();
  if (k < 1) throw ConfigError("k must be >= 1");
  const double s = static_cast<double>(std::min(streak, k)) / static_cast<double>(k);
  const double span = bounds.r_max - bounds.r_min;
  switch (state) {
    case LogicalState::stable:
      return bounds.clamp(bounds.r_min + span * s);
    case LogicalState::unstable:
      return bounds.clamp(bounds.r_max - span * s);
    default:
      return bounds.r_min;
  }
}

AppliedEffect apply_change_rate(PeerConfig& cfg, std::string_view indicator, double interval) {
  AppliedEffect e;
  e.target = fmt::format("rate:{}", indicator);
  if (!cfg.is_registered(indicator)) {
    e.error = true;
    e.message = fmt::format("unknown indicator '{}'", indicator);
    return e;
  }
  const double before = cfg.interval(indicator);
  e.before = fmt::format("{}", before);
  if (!cfg.is_enabled(indicator)) {
    e.after = e.before;
    e.error = true;
    e.message = fmt::format("indicator '{}' is disabled", indicator);
    return e;
  }
  auto r = cfg.set_interval(indicator, interval);
  e.after = fmt::format("{}", r.after);
  e.clamped = r.clamped;
  if (r.clamped) e.message = fmt::format("requested {} clamped to {}", interval, r.after);
  return e;
}

AppliedEffect apply_select_indicators(PeerConfig& cfg, const SelectDirective& directive) {
  AppliedEffect e;
  e.target = "selection";
  e.before = enabled_string(cfg);
  PeerConfig next = cfg;
  try {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, rules::SelectKeep>) {
            next.select_keep(d.indicators);
          } else if constexpr (std::is_same_v<T, rules::SelectDrop>) {
            next.select_drop(d.indicators);
          } else {
            next.select_all();
          }
        },
        directive);
    cfg = std::move(next);
  } catch (const Error& err) {
    e.error = true;
    e.message = err.what();
  }
  e.after = enabled_string(cfg);
  return e;
}

RateContextLookup rate_context_from(const KnowledgeBase& kb) {
  return [&kb](std::string_view name) -> std::optional<RateContext> {
    if (!kb.has_indicator(name)) return std::nullopt;
    auto latest = kb.latest_states(name);
    if (!latest) return std::nullopt;
    RateContext ctx;
    ctx.state = latest->states.contains(LogicalState::stable) ? LogicalState::stable : LogicalState::unstable;
    ctx.k = kb.state_config(name).k;
    // only the last k sets can influence the formula
    ctx.streak = streak(kb.state_history(name, ctx.k), ctx.state);
    return ctx;
  };
}

std::vector<AppliedEffect> execute(std::span<const rules::PlannedAction> queue, PeerConfig& cfg,
                                   const RateContextLookup& context, std::uint64_t tick) {
  std::vector<AppliedEffect> effects;
  std::set<std::string, std::less<>> claimed;
  for (const auto& planned : queue) {
    const std::string target = rules::action_target(planned.action);
    AppliedEffect e;
    if (!claimed.insert(target).second) {
      e.target = target;
      e.discarded = true;
      e.message = "conflicts with an earlier action on the same target";
    } else {
      e = std::visit(
          [&](const auto& a) -> AppliedEffect {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, rules::ChangeRateProportional>) {
              auto ctx = context ? context(a.indicator) : std::nullopt;
              if (!ctx) {
                AppliedEffect none;
                none.target = target;
                none.error = true;
                none.message = fmt::format("no state known for '{}'", a.indicator);
                return none;
              }
              return apply_change_rate(cfg, a.indicator,
                                       compute_indicator_rate(ctx->state, ctx->streak, cfg.bounds, ctx->k));
            } else if constexpr (std::is_same_v<T, rules::ChangeRateTo>) {
              return apply_change_rate(cfg, a.indicator, a.seconds);
            } else {
              return apply_select_indicators(cfg, SelectDirective{a});
            }
          },
          planned.action);
    }
    e.tick = tick;
    e.rule = planned.rule;
    if (e.error || e.discarded) spdlog::debug("tick {}: rule {} on {}: {}", tick, e.rule, e.target, e.message);
    effects.push_back(std::move(e));
  }
  return effects;
}

}  // namespace adaptivemon
