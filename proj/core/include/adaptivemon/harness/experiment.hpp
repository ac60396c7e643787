#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adaptivemon/harness/metrics.hpp"
#include "adaptivemon/harness/scenario.hpp"
#include "adaptivemon/peer/config.hpp"
#include "adaptivemon/rules/ast.hpp"

namespace adaptivemon::harness {

enum class Mode { adaptive, fixed };

std::string_view to_string(Mode m) noexcept;  // "adaptive" / "static"
std::optional<Mode> parse_mode(std::string_view text) noexcept;

enum class Preset { rq1, standard };

std::string_view to_string(Preset p) noexcept;  // "rq1" / "default"
std::optional<Preset> parse_preset(std::string_view text) noexcept;

/// Follower settings of a preset: one numerical "cpu" indicator on [0, 1].
///   rq1      bounds [5, 40], start at 40, sensitivity off, W = 20,
///            k = 3, p = 1, delta_max = 0.035
///   default  bounds [30, 60], start at 60, sensitivity 0.1, W = 20,
///            state defaults for the range
peer::PeerSettings preset_settings(Preset p);

/// Text of the rule file shipped for the preset (rules/rq1.rules or
/// rules/default.rules).
std::string_view preset_rules_text(Preset p) noexcept;

inline constexpr double kStaticInterval = 30.0;
inline constexpr double kSpikeThreshold = 0.9;

struct ExperimentResult {
  std::string scenario;
  Mode mode = Mode::adaptive;
  std::uint64_t seed = 0;
  double rmse_follower = 0.0;
  double rmse_leader = 0.0;
  double msgs_per_sec = 0.0;
  std::optional<double> spike_pct;

  // traces; empty when read back from CSV
  double duration = 0.0;
  std::vector<double> truth;
  std::vector<TracePoint> samples;    // follower probes
  std::vector<TracePoint> reports;    // report means at leader arrival
  std::vector<TracePoint> intervals;  // cpu interval after each cycle
  std::uint64_t report_count = 0;
};

/// One Leader and one Follower on the simulated transport. Static mode pins
/// the interval at 30 s and skips planning; adaptive mode runs `rules`.
ExperimentResult run_experiment(const Scenario& scenario, Mode mode, const peer::PeerSettings& settings,
                                const rules::RuleSet& rules, std::uint64_t seed);

/// Generates the scenario and runs it under a preset with its shipped rules,
/// or with `rules` when given.
ExperimentResult run_experiment(std::string_view scenario, Mode mode, Preset preset, std::uint64_t seed,
                                const std::optional<rules::RuleSet>& rules = std::nullopt);

/// Every scenario in both modes for each seed, in CSV row order.
std::vector<ExperimentResult> run_matrix(std::span<const std::uint64_t> seeds, Preset preset = Preset::rq1);

inline constexpr std::string_view kCsvHeader = "scenario,mode,seed,rmse_follower,rmse_leader,msgs_per_sec,spike_pct";

/// CSV with kCsvHeader, rows sorted by (scenario, mode, seed), numbers with
/// six decimals, "NA" for a missing spike rate.
std::string format_results(std::span<const ExperimentResult> results);
void write_results(std::span<const ExperimentResult> results, const std::filesystem::path& path);
std::vector<ExperimentResult> parse_results(std::string_view csv);
std::vector<ExperimentResult> read_results(const std::filesystem::path& path);

/// Writes <dir>/<scenario>_<mode>_<seed>.csv with one row per second:
/// t,truth,follower,leader,interval (reconstructions empty before the first value).
void write_trace(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace adaptivemon::harness
