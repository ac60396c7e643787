#include <gtest/gtest.h>

#include <optional>

#include "adaptivemon/adaptation.hpp"
#include "adaptivemon/error.hpp"
#include "adaptivemon/random.hpp"
#include "support/generators.hpp"

using namespace adaptivemon;
using namespace adaptivemon::rules;

namespace {

PeerConfig three(double interval = 30) {
  PeerConfig cfg;
  for (auto n : {"cpu", "mem", "power"}) cfg.add_indicator(n, interval);
  return cfg;
}

PlannedAction planned(Action a, std::int64_t salience, std::string rule, std::size_t seq) {
  PlannedAction p;
  p.action = std::move(a);
  p.salience = salience;
  p.rule = std::move(rule);
  p.sequence = seq;
  return p;
}

RateContextLookup fixed_context(LogicalState s, std::size_t streak, std::size_t k) {
  return [=](std::string_view) { return std::optional<RateContext>(RateContext{s, streak, k}); };
}

}  // namespace

TEST(ComputeIndicatorRate, Examples) {
  const RateBounds b{30, 60};
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::stable, 5, b, 5), 60);
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::unstable, 0, b, 5), 60);
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::unstable, 5, b, 5), 30);
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::stable, 2, b, 4), 45);
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::stable, 0, b, 4), 30);
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::stable, 99, b, 4), 60);
  EXPECT_DOUBLE_EQ(compute_indicator_rate(LogicalState::too_high, 3, b, 4), 30);
  EXPECT_THROW(compute_indicator_rate(LogicalState::stable, 1, RateBounds{0, 10}, 4), ConfigError);
  EXPECT_THROW(compute_indicator_rate(LogicalState::stable, 1, b, 0), ConfigError);
}

TEST(ComputeIndicatorRateProperty, MonotoneAndBounded) {
  Rng rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const double lo = 1 + 100 * rng.uniform();
    const RateBounds b{lo, lo + 100 * rng.uniform()};
    const std::size_t k = 1 + rng.index(10);
    const auto state = gen::state(rng);
    double prev = compute_indicator_rate(state, 0, b, k);
    for (std::size_t s = 0; s <= k + 3; ++s) {
      const double r = compute_indicator_rate(state, s, b, k);
      ASSERT_GE(r, b.r_min);
      ASSERT_LE(r, b.r_max);
      if (state == LogicalState::stable) ASSERT_GE(r, prev);
      if (state == LogicalState::unstable) ASSERT_LE(r, prev);
      prev = r;
    }
  }
}

TEST(ApplyChangeRate, Examples) {
  auto cfg = three(30);
  auto e = apply_change_rate(cfg, "cpu", 60);
  EXPECT_DOUBLE_EQ(cfg.interval("cpu"), 60);
  EXPECT_FALSE(e.error);
  EXPECT_EQ(e.target, "rate:cpu");

  e = apply_change_rate(cfg, "cpu", 10);
  EXPECT_DOUBLE_EQ(cfg.interval("cpu"), 30);
  EXPECT_TRUE(e.clamped);

  cfg.select_drop({"mem"});
  const auto before = cfg;
  e = apply_change_rate(cfg, "mem", 45);
  EXPECT_TRUE(e.error);
  EXPECT_EQ(cfg, before);
  e = apply_change_rate(cfg, "gpu", 45);
  EXPECT_TRUE(e.error);
  EXPECT_EQ(cfg, before);
}

TEST(ApplySelectIndicators, Examples) {
  auto cfg = three();
  auto e = apply_select_indicators(cfg, SelectKeep{{"power"}});
  EXPECT_FALSE(e.error);
  EXPECT_EQ(cfg.enabled(), (std::set<std::string, std::less<>>{"power"}));
  apply_select_indicators(cfg, SelectAll{});
  EXPECT_EQ(cfg.enabled(), (std::set<std::string, std::less<>>{"cpu", "mem", "power"}));

  const auto before = cfg;
  e = apply_select_indicators(cfg, SelectKeep{{"nonexistent"}});
  EXPECT_TRUE(e.error);
  EXPECT_EQ(cfg, before);
  e = apply_select_indicators(cfg, SelectDrop{{"cpu", "mem", "power"}});
  EXPECT_TRUE(e.error);
  EXPECT_EQ(cfg, before);
}

TEST(ApplySelectIndicatorsProperty, SelectAllRestores) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    PeerConfig cfg;
    for (const auto& n : gen::indicator_pool()) cfg.add_indicator(n, 30);
    const auto before = cfg.enabled();
    SelectDirective d = rng.index(2) ? SelectDirective(SelectKeep{gen::names(rng)})
                                     : SelectDirective(SelectDrop{gen::names(rng)});
    apply_select_indicators(cfg, d);
    apply_select_indicators(cfg, SelectAll{});
    ASSERT_EQ(cfg.enabled(), before);
  }
}

TEST(Execute, ConflictFirstWins) {
  auto cfg = three();
  std::vector<PlannedAction> q = {planned(ChangeRateTo{"cpu", 60}, 100, "a", 0),
                                  planned(ChangeRateTo{"cpu", 30}, 10, "b", 1)};
  auto effects = execute(q, cfg, fixed_context(LogicalState::stable, 0, 1), 4);
  EXPECT_DOUBLE_EQ(cfg.interval("cpu"), 60);
  ASSERT_EQ(effects.size(), 2u);
  EXPECT_FALSE(effects[0].discarded);
  EXPECT_TRUE(effects[1].discarded);
  EXPECT_EQ(effects[1].rule, "b");
  EXPECT_EQ(effects[0].tick, 4u);
}

TEST(Execute, SelectThenRateOnDisabledIsError) {
  auto cfg = three();
  std::vector<PlannedAction> q = {planned(SelectKeep{{"power"}}, 100, "keep", 0),
                                  planned(ChangeRateProportional{"cpu"}, 10, "rate", 1)};
  auto effects = execute(q, cfg, fixed_context(LogicalState::stable, 5, 5));
  ASSERT_EQ(effects.size(), 2u);
  EXPECT_FALSE(effects[0].error);
  EXPECT_TRUE(effects[1].error);
  EXPECT_FALSE(effects[1].discarded);
  EXPECT_DOUBLE_EQ(cfg.interval("cpu"), 30);
}

TEST(Execute, EmptyQueue) {
  auto cfg = three();
  EXPECT_TRUE(execute({}, cfg, fixed_context(LogicalState::stable, 0, 1)).empty());
}

TEST(Execute, ProportionalUsesContext) {
  auto cfg = three();
  std::vector<PlannedAction> q = {planned(ChangeRateProportional{"cpu"}, 10, "r", 0)};
  execute(q, cfg, fixed_context(LogicalState::stable, 2, 4));
  EXPECT_DOUBLE_EQ(cfg.interval("cpu"), 45);
}

TEST(Execute, ProportionalDuringWarmUpIsError) {
  auto cfg = three();
  std::vector<PlannedAction> q = {planned(ChangeRateProportional{"cpu"}, 10, "r", 0)};
  auto effects = execute(q, cfg, [](std::string_view) { return std::optional<RateContext>{}; });
  ASSERT_EQ(effects.size(), 1u);
  EXPECT_TRUE(effects[0].error);
  EXPECT_DOUBLE_EQ(cfg.interval("cpu"), 30);
}

TEST(RateContextFrom, DominantState) {
  KnowledgeBase kb;
  StateConfig c;
  c.k = 3;
  kb.register_indicator({"cpu", IndicatorKind::numerical}, c);
  auto lookup = rate_context_from(kb);
  EXPECT_FALSE(lookup("cpu"));
  EXPECT_FALSE(lookup("gpu"));
  kb.append_states("cpu", {0, {LogicalState::unstable}});
  kb.append_states("cpu", {1, {LogicalState::stable, LogicalState::normal}});
  kb.append_states("cpu", {2, {LogicalState::stable}});
  auto ctx = rate_context_from(kb)("cpu");
  ASSERT_TRUE(ctx);
  EXPECT_EQ(ctx->state, LogicalState::stable);
  EXPECT_EQ(ctx->streak, 2u);
  EXPECT_EQ(ctx->k, 3u);
}

// Property: executing the same queue twice from the same start config gives
// the same final config.
TEST(ExecuteProperty, IdempotentFinalConfig) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    PeerConfig start;
    for (const auto& n : gen::indicator_pool()) start.add_indicator(n, 30 + 30 * rng.uniform());
    std::vector<PlannedAction> q;
    const std::size_t n = rng.index(8);
    for (std::size_t i = 0; i < n; ++i) q.push_back(planned(gen::action(rng), 0, "r" + std::to_string(i), i));
    const auto ctx = fixed_context(rng.index(2) ? LogicalState::stable : LogicalState::unstable, rng.index(6), 5);
    auto a = start;
    auto b = start;
    const auto ea = execute(q, a, ctx);
    const auto eb = execute(q, b, ctx);
    ASSERT_EQ(a, b);
    ASSERT_EQ(ea.size(), q.size());
    for (double iv : [&] {
           std::vector<double> v;
           for (const auto& [_, x] : a.intervals()) v.push_back(x);
           return v;
         }()) {
      ASSERT_GE(iv, a.bounds.r_min);
      ASSERT_LE(iv, a.bounds.r_max);
    }
    ASSERT_FALSE(a.enabled().empty());
  }
}
