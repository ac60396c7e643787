#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "adaptivemon/error.hpp"
#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/random.hpp"
#include "adaptivemon/state_engine.hpp"
#include "support/oracle.hpp"

using namespace adaptivemon;

namespace {

StateConfig cfg_of(std::size_t k, double p, double dmax, double tl, double l, double h, double th) {
  StateConfig c;
  c.k = k;
  c.p = p;
  c.delta_max = dmax;
  c.too_low = tl;
  c.low = l;
  c.high = h;
  c.too_high = th;
  return c;
}

std::set<std::string> names_of(StateSet s) {
  std::set<std::string> out;
  for (auto st : s.states()) out.emplace(to_string(st));
  return out;
}

std::size_t level_count(StateSet s) {
  std::size_t n = 0;
  for (auto st : s.states()) n += is_level_state(st) ? 1 : 0;
  return n;
}

// All windows of length k+1 over `values`, visited in lexicographic order.
template <typename F>
void for_each_window(const std::vector<double>& values, std::size_t len, F&& f) {
  std::vector<std::size_t> idx(len, 0);
  std::vector<double> w(len);
  while (true) {
    for (std::size_t i = 0; i < len; ++i) w[i] = values[idx[i]];
    f(w);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < values.size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

const std::vector<double> kGrid = {0.0, 0.25, 0.5, 0.75, 1.0};

}  // namespace

TEST(ClassifyCategorical, Examples) {
  StateConfig c;
  c.k = 2;
  std::vector<std::string> same = {"on", "on", "on"};
  EXPECT_EQ(classify_categorical(same, c), StateSet{LogicalState::stable});
  std::vector<std::string> mixed = {"on", "off", "on"};
  EXPECT_EQ(classify_categorical(mixed, c), StateSet{LogicalState::unstable});
  c.k = 3;
  std::vector<std::string> pairs = {"a", "a", "b", "b"};
  EXPECT_EQ(classify_categorical(pairs, c), StateSet{LogicalState::unstable});
  EXPECT_THROW(classify_categorical(same, c), WindowError);
}

TEST(ClassifyCategorical, MatchesOracle) {
  Rng rng(3);
  const std::vector<std::string> tokens = {"a", "b", "c"};
  for (int trial = 0; trial < 500; ++trial) {
    StateConfig c;
    c.k = 1 + rng.index(5);
    std::vector<std::string> w;
    for (std::size_t i = 0; i <= c.k; ++i) w.push_back(tokens[rng.index(rng.index(2) ? 1 : 3)]);
    const auto got = classify_categorical(w, c);
    ASSERT_EQ(got.size(), 1u);
    ASSERT_EQ(names_of(got), oracle::categorical_states(w));
  }
}

TEST(ClassifyNumerical, ConstantNormal) {
  auto c = cfg_of(4, 0.8, 0.05, 0.1, 0.2, 0.8, 0.9);
  std::vector<double> w = {0.5, 0.5, 0.5, 0.5, 0.5};
  EXPECT_EQ(classify_numerical(w, c), (StateSet{LogicalState::stable, LogicalState::normal}));
}

TEST(ClassifyNumerical, MaximalAlternation) {
  auto c = cfg_of(4, 0.8, 0.05, 0.1, 0.2, 0.8, 0.9);
  std::vector<double> w = {0.0, 1.0, 0.0, 1.0, 0.0};
  EXPECT_EQ(classify_numerical(w, c), StateSet{LogicalState::unstable});
}

TEST(ClassifyNumerical, ThresholdIsNotRoundedUp) {
  // 3 of 4 steps within tolerance, and 3 < 0.8 * 4
  auto c = cfg_of(4, 0.8, 0.05, 0.1, 0.3, 0.7, 0.9);
  std::vector<double> w = {0.0, 0.5, 0.5, 0.5, 0.5};
  EXPECT_TRUE(classify_numerical(w, c).contains(LogicalState::unstable));
  c.p = 0.75;
  EXPECT_TRUE(classify_numerical(w, c).contains(LogicalState::stable));
}

TEST(ClassifyNumerical, BoundaryStepIsStable) {
  auto c = cfg_of(1, 1.0, 0.25, 0.1, 0.3, 0.7, 0.9);
  std::vector<double> w = {0.25, 0.5};
  EXPECT_TRUE(classify_numerical(w, c).contains(LogicalState::stable));
}

TEST(ClassifyNumerical, LastStepMustBeStable) {
  auto c = cfg_of(4, 0.5, 0.05, 0.1, 0.3, 0.7, 0.9);
  std::vector<double> w = {0.5, 0.5, 0.5, 0.5, 0.8};
  EXPECT_TRUE(classify_numerical(w, c).contains(LogicalState::unstable));
}

TEST(ClassifyNumerical, LevelAllowsOneOutlierAtFullTolerance) {
  auto c = cfg_of(4, 1.0, 1.0, 0.1, 0.3, 0.7, 0.9);
  std::vector<double> w = {0.0, 0.5, 0.5, 0.5, 0.5};
  EXPECT_TRUE(classify_numerical(w, c).contains(LogicalState::normal));
}

TEST(ClassifyNumerical, Errors) {
  auto c = cfg_of(4, 0.8, 0.05, 0.1, 0.3, 0.7, 0.9);
  std::vector<double> short_window = {0.5, 0.5};
  EXPECT_THROW(classify_numerical(short_window, c), WindowError);
  c.p = 1.5;
  std::vector<double> w(5, 0.5);
  EXPECT_THROW(classify_numerical(w, c), ConfigError);
}

TEST(ClassifyNumerical, ExhaustiveGridMatchesOracle) {
  std::size_t cases = 0;
  for (double p : {0.5, 1.0}) {
    for (double dmax : {0.1, 0.3}) {
      auto c = cfg_of(3, p, dmax, 0.1, 0.3, 0.7, 0.9);
      const oracle::Params op{3, p, dmax, 0.1, 0.3, 0.7, 0.9};
      for_each_window(kGrid, 4, [&](const std::vector<double>& w) {
        ++cases;
        ASSERT_EQ(names_of(classify_numerical(w, c)), oracle::numerical_states(w, op)) << "p=" << p
                                                                                      << " dmax=" << dmax;
      });
    }
  }
  EXPECT_EQ(cases, 4u * 625u);
}

TEST(ClassifyNumerical, RandomWindowsMatchOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t k = 1 + rng.index(8);
    const double p = 0.05 + 0.95 * rng.uniform();
    const double dmax = 0.3 * rng.uniform();
    auto c = cfg_of(k, p, dmax, 0.1, 0.3, 0.7, 0.9);
    std::vector<double> w;
    double v = rng.uniform();
    for (std::size_t i = 0; i <= k; ++i) w.push_back(v = std::clamp(v + rng.uniform(-0.2, 0.2), -0.1, 1.1));
    ASSERT_EQ(names_of(classify_numerical(w, c)), oracle::numerical_states(w, {k, p, dmax, 0.1, 0.3, 0.7, 0.9}));
  }
}

TEST(ClassifyNumericalProperty, ExactlyOneStabilityAndAtMostOneLevel) {
  for (double p : {0.5, 1.0}) {
    for (double dmax : {0.1, 0.3}) {
      auto c = cfg_of(3, p, dmax, 0.1, 0.3, 0.7, 0.9);
      for_each_window(kGrid, 4, [&](const std::vector<double>& w) {
        const auto s = classify_numerical(w, c);
        ASSERT_NE(s.contains(LogicalState::stable), s.contains(LogicalState::unstable));
        ASSERT_LE(level_count(s), 1u);
        ASSERT_GE(s.size(), 1u);
        ASSERT_LE(s.size(), 2u);
      });
    }
  }
}

// Raising p can only remove states, except that losing stable adds its
// complement unstable.
TEST(ClassifyNumericalProperty, MonotoneTolerance) {
  const std::vector<double> ps = {0.25, 0.5, 0.75, 1.0};
  for (double dmax : {0.1, 0.3}) {
    for_each_window(kGrid, 4, [&](const std::vector<double>& w) {
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        const auto lo = classify_numerical(w, cfg_of(3, ps[i], dmax, 0.1, 0.3, 0.7, 0.9));
        auto hi = classify_numerical(w, cfg_of(3, ps[i + 1], dmax, 0.1, 0.3, 0.7, 0.9));
        if (hi.contains(LogicalState::unstable) && !lo.contains(LogicalState::unstable)) {
          ASSERT_TRUE(lo.contains(LogicalState::stable));
          hi.erase(LogicalState::unstable);
        }
        ASSERT_TRUE(hi.is_subset_of(lo));
      }
    });
  }
}

// Dyadic shifts keep every difference and comparison exact.
TEST(ClassifyNumericalProperty, TranslationCovariance) {
  for (double shift : {-2.0, -0.5, 0.25, 1.0, 8.0}) {
    for (double p : {0.5, 1.0}) {
      for (double dmax : {0.125, 0.25}) {
        const auto base = cfg_of(3, p, dmax, 0.125, 0.25, 0.75, 0.875);
        const auto moved = cfg_of(3, p, dmax, 0.125 + shift, 0.25 + shift, 0.75 + shift, 0.875 + shift);
        for_each_window(kGrid, 4, [&](const std::vector<double>& w) {
          std::vector<double> m = w;
          for (auto& v : m) v += shift;
          ASSERT_EQ(classify_numerical(w, base), classify_numerical(m, moved));
        });
      }
    }
  }
}

TEST(Analyze, WarmUpStoresNothing) {
  KnowledgeBase kb;
  StateConfig c = cfg_of(4, 0.8, 0.05, 0.1, 0.3, 0.7, 0.9);
  kb.register_indicator({"cpu", IndicatorKind::numerical}, c);
  for (int i = 0; i < 3; ++i) kb.append("cpu", {static_cast<double>(i), 0.5});
  EXPECT_TRUE(analyze(kb, "cpu").empty());
  EXPECT_EQ(kb.state_count("cpu"), 0u);
}

TEST(Analyze, AppendsOncePerSample) {
  KnowledgeBase kb;
  StateConfig c = cfg_of(4, 0.8, 0.05, 0.1, 0.3, 0.7, 0.9);
  kb.register_indicator({"cpu", IndicatorKind::numerical}, c);
  for (int i = 0; i < 5; ++i) kb.append("cpu", {static_cast<double>(i), 0.5});
  EXPECT_EQ(analyze(kb, "cpu"), (StateSet{LogicalState::stable, LogicalState::normal}));
  EXPECT_EQ(kb.state_count("cpu"), 1u);
  EXPECT_TRUE(analyze(kb, "cpu").empty());
  EXPECT_EQ(kb.state_count("cpu"), 1u);
  EXPECT_DOUBLE_EQ(kb.latest_states("cpu")->timestamp, 4.0);
  EXPECT_THROW(analyze(kb, "gpu"), UnknownIndicatorError);
}

TEST(Analyze, CategoricalIndicator) {
  KnowledgeBase kb;
  StateConfig c;
  c.k = 2;
  kb.register_indicator({"door", IndicatorKind::categorical}, c);
  for (int i = 0; i < 3; ++i) kb.append("door", {static_cast<double>(i), std::string("open")});
  EXPECT_EQ(analyze(kb, "door"), StateSet{LogicalState::stable});
  kb.append("door", {3, std::string("shut")});
  EXPECT_EQ(analyze(kb, "door"), StateSet{LogicalState::unstable});
}

// State history timestamps follow sample timestamps once warm-up is over.
TEST(AnalyzeProperty, HistoryAlignedWithSamples) {
  Rng rng(9);
  KnowledgeBase kb;
  StateConfig c;
  c.k = 3;
  kb.register_indicator({"cpu", IndicatorKind::numerical}, c);
  for (int i = 0; i < 200; ++i) {
    kb.append("cpu", {static_cast<double>(i), rng.uniform()});
    const auto s = analyze(kb, "cpu");
    if (i < 3) {
      ASSERT_TRUE(s.empty());
    } else {
      ASSERT_FALSE(s.empty());
      ASSERT_DOUBLE_EQ(kb.latest_states("cpu")->timestamp, static_cast<double>(i));
      ASSERT_EQ(kb.state_count("cpu"), static_cast<std::size_t>(i - 2));
    }
  }
}

TEST(Streak, Examples) {
  std::vector<StateSet> h = {{LogicalState::unstable}, {LogicalState::stable}, {LogicalState::stable}};
  EXPECT_EQ(streak(h, LogicalState::stable), 2u);
  std::vector<StateSet> h2 = {{LogicalState::stable}, {LogicalState::unstable}};
  EXPECT_EQ(streak(h2, LogicalState::stable), 0u);
  EXPECT_EQ(streak({}, LogicalState::stable), 0u);
}
