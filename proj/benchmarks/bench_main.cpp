#include <benchmark/benchmark.h>

#include <vector>

#include "adaptivemon/harness/experiment.hpp"
#include "adaptivemon/knowledge_base.hpp"
#include "adaptivemon/peer/messages.hpp"
#include "adaptivemon/random.hpp"
#include "adaptivemon/rules/parser.hpp"
#include "adaptivemon/rules/planner.hpp"
#include "adaptivemon/state_engine.hpp"

using namespace adaptivemon;

static void BM_ClassifyNumerical(benchmark::State& state) {
  StateConfig cfg;
  cfg.k = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> w(cfg.k + 1);
  for (auto& v : w) v = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(classify_numerical(w, cfg));
}
BENCHMARK(BM_ClassifyNumerical)->Arg(3)->Arg(5)->Arg(20);

static void BM_PlanTick(benchmark::State& state) {
  const auto rules = rules::parse_rules(harness::preset_rules_text(harness::Preset::standard));
  KnowledgeBase kb;
  for (auto n : {"cpu", "mem", "power"}) {
    kb.register_indicator({n, IndicatorKind::numerical}, StateConfig{});
    kb.append_states(n, {0, {LogicalState::stable, LogicalState::normal}});
  }
  std::uint64_t tick = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rules::plan_tick(rules, kb, ++tick));
}
BENCHMARK(BM_PlanTick);

static void BM_CodecRoundTrip(benchmark::State& state) {
  const peer::Message m = peer::Report{"follower-1", "cpu", 123.5, 0.4375, 0.015625, 20};
  for (auto _ : state) benchmark::DoNotOptimize(peer::decode_message(peer::encode_message(m)));
}
BENCHMARK(BM_CodecRoundTrip);

static void BM_Experiment(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        harness::run_experiment("stable_unstable", harness::Mode::adaptive, harness::Preset::rq1, ++seed));
  }
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
