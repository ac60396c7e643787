#include "adaptivemon/harness/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "adaptivemon/error.hpp"
#include "adaptivemon/peer/follower.hpp"
#include "adaptivemon/peer/leader.hpp"
#include "adaptivemon/peer/sim.hpp"
#include "adaptivemon/random.hpp"
#include "adaptivemon/rules/parser.hpp"
#include "preset_rules.hpp"

namespace adaptivemon::harness {

namespace fs = std::filesystem;

std::string_view to_string(Mode m) noexcept { return m == Mode::adaptive ? "adaptive" : "static"; }

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "adaptive") return Mode::adaptive;
  if (text == "static") return Mode::fixed;
  return std::nullopt;
}

std::string_view to_string(Preset p) noexcept { return p == Preset::rq1 ? "rq1" : "default"; }

std::optional<Preset> parse_preset(std::string_view text) noexcept {
  if (text == "rq1") return Preset::rq1;
  if (text == "default") return Preset::standard;
  return std::nullopt;
}

peer::PeerSettings preset_settings(Preset p) {
  peer::PeerSettings s;
  peer::IndicatorSpec cpu;
  cpu.indicator = {"cpu", IndicatorKind::numerical};
  cpu.state = StateConfig::defaults_for_range(0.0, 1.0);
  s.config.window = 20;
  if (p == Preset::rq1) {
    s.config.bounds = {5.0, 40.0};
    s.config.sensitivity.reset();
    cpu.state.k = 3;
    cpu.state.p = 1.0;
    cpu.state.delta_max = 0.035;
    cpu.interval = 40.0;
  } else {
    s.config.bounds = {30.0, 60.0};
    s.config.sensitivity = 0.10;
    cpu.interval = 60.0;
  }
  s.indicators.push_back(cpu);
  return s;
}

std::string_view preset_rules_text(Preset p) noexcept {
  return p == Preset::rq1 ? detail::kRq1Rules : detail::kDefaultRules;
}

ExperimentResult run_experiment(const Scenario& scenario, Mode mode, const peer::PeerSettings& settings,
                                const rules::RuleSet& rules, std::uint64_t seed) {
  peer::PeerSettings run = settings;
  if (mode == Mode::fixed) {
    run.config.bounds = {kStaticInterval, kStaticInterval};
    for (auto& spec : run.indicators) spec.interval = kStaticInterval;
  }

  ExperimentResult r;
  r.scenario = scenario.name;
  r.mode = mode;
  r.seed = seed;
  r.duration = scenario.duration;
  r.truth = scenario.truth;

  peer::Follower follower("follower", run.make_knowledge_base(), rules,
                          peer::Follower::Options{.adaptive = mode == Mode::adaptive});
  for (const auto& spec : run.indicators) {
    follower.attach_probe(spec.indicator.name, [&scenario](double t) -> Value { return scenario.value_at(t); });
  }
  const std::string primary = run.indicators.front().indicator.name;
  follower.on_sample = [&](const std::string& name, const Sample& s) {
    if (name == primary) r.samples.push_back({s.timestamp, std::get<double>(s.value)});
  };
  follower.on_cycle = [&](double now) { r.intervals.push_back({now, follower.kb().config().interval(primary)}); };

  peer::EventQueue events;
  peer::SimNetwork net(events);
  peer::Leader leader("leader", {}, run.config.gossip, mix_seed(seed, 1));
  peer::schedule_leader(events, net, leader);
  peer::schedule_follower(events, net, follower, leader.node());
  events.run_until(scenario.duration);

  for (const auto& rec : leader.store().log()) {
    if (rec.report.indicator == primary) r.reports.push_back({rec.arrival, rec.report.mean});
  }
  const auto& by_type = net.stats().by_type;
  if (auto it = by_type.find("report"); it != by_type.end()) r.report_count = it->second;
  r.msgs_per_sec = static_cast<double>(r.report_count) / scenario.duration;

  const std::size_t grid = scenario.truth.size();
  r.rmse_follower = rmse(zero_order_hold(r.samples, grid), scenario.truth);
  r.rmse_leader = rmse(zero_order_hold(r.reports, grid), scenario.truth);
  r.spike_pct = spike_detection_rate(r.samples, scenario.spikes, kSpikeThreshold);
  return r;
}

ExperimentResult run_experiment(std::string_view scenario, Mode mode, Preset preset, std::uint64_t seed,
                                const std::optional<rules::RuleSet>& rules) {
  const Scenario sc = gen_scenario(scenario, seed);
  const rules::RuleSet rs = rules ? *rules : rules::parse_rules(preset_rules_text(preset));
  return run_experiment(sc, mode, preset_settings(preset), rs, seed);
}

std::vector<ExperimentResult> run_matrix(std::span<const std::uint64_t> seeds, Preset preset) {
  const rules::RuleSet rs = rules::parse_rules(preset_rules_text(preset));
  const auto settings = preset_settings(preset);
  std::vector<ExperimentResult> out;
  for (auto name : scenario_names()) {
    for (auto seed : seeds) {
      const Scenario sc = gen_scenario(name, seed);
      for (Mode m : {Mode::adaptive, Mode::fixed}) out.push_back(run_experiment(sc, m, settings, rs, seed));
    }
  }
  return out;
}

std::string format_results(std::span<const ExperimentResult> results) {
  std::vector<const ExperimentResult*> rows;
  for (const auto& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
    return std::tuple(std::string_view(a->scenario), to_string(a->mode), a->seed) <
           std::tuple(std::string_view(b->scenario), to_string(b->mode), b->seed);
  });
  std::string out = fmt::format("{}\n", kCsvHeader);
  for (const auto* r : rows) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{}\n", r->scenario, to_string(r->mode), r->seed, r->rmse_follower,
                       r->rmse_leader, r->msgs_per_sec, r->spike_pct ? fmt::format("{:.6f}", *r->spike_pct) : "NA");
  }
  return out;
}

void write_results(std::span<const ExperimentResult> results, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << format_results(results);
  if (!out.flush()) throw Error(fmt::format("write to '{}' failed", path.string()));
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line, const char* name) {
  T v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw Error(fmt::format("results line {}: bad {} '{}'", line, name, text));
  }
  return v;
}

}  // namespace

std::vector<ExperimentResult> parse_results(std::string_view csv) {
  std::vector<ExperimentResult> out;
  std::size_t lineno = 0;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    std::string_view line = csv.substr(0, nl);
    csv.remove_prefix(nl == std::string_view::npos ? csv.size() : nl + 1);
    ++lineno;
    if (lineno == 1) {
      if (line != kCsvHeader) throw Error("results: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    for (std::size_t start = 0;;) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 7) throw Error(fmt::format("results line {}: expected 7 fields", lineno));
    ExperimentResult r;
    r.scenario = std::string(f[0]);
    auto mode = parse_mode(f[1]);
    if (!mode) throw Error(fmt::format("results line {}: bad mode '{}'", lineno, f[1]));
    r.mode = *mode;
    r.seed = parse_field<std::uint64_t>(f[2], lineno, "seed");
    r.rmse_follower = parse_field<double>(f[3], lineno, "rmse_follower");
    r.rmse_leader = parse_field<double>(f[4], lineno, "rmse_leader");
    r.msgs_per_sec = parse_field<double>(f[5], lineno, "msgs_per_sec");
    if (f[6] != "NA") r.spike_pct = parse_field<double>(f[6], lineno, "spike_pct");
    out.push_back(std::move(r));
  }
  if (lineno == 0) throw Error("results: empty file");
  return out;
}

std::vector<ExperimentResult> read_results(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_results(buf.str());
}

void write_trace(const ExperimentResult& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto path = dir / fmt::format("{}_{}_{}.csv", r.scenario, to_string(r.mode), r.seed);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));

  const std::size_t grid = r.truth.size();
  const auto follower = zero_order_hold(r.samples, grid);
  const auto leader = zero_order_hold(r.reports, grid);
  const auto interval = zero_order_hold(r.intervals, grid);
  auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string(); };
  out << "t,truth,follower,leader,interval\n";
  for (std::size_t g = 0; g < grid; ++g) {
    out << fmt::format("{},{:.6f},{},{},{}\n", g, r.truth[g], cell(follower[g]), cell(leader[g]), cell(interval[g]));
  }
}

}  // namespace adaptivemon::harness
