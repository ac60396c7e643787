#include <atomic>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "adaptivemon/error.hpp"
#include "adaptivemon/harness/experiment.hpp"
#include "adaptivemon/peer/clock.hpp"
#include "adaptivemon/peer/config.hpp"
#include "adaptivemon/peer/follower.hpp"
#include "adaptivemon/peer/leader.hpp"
#include "adaptivemon/peer/probes.hpp"
#include "adaptivemon/peer/tcp.hpp"
#include "adaptivemon/rules/parser.hpp"

namespace am = adaptivemon;
namespace harness = adaptivemon::harness;
namespace peer = adaptivemon::peer;

namespace {

constexpr int kConfigErrorExit = 2;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

void install_signal_handlers() {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
}

struct FollowerArgs {
  std::string leader;
  std::string config;
  std::string rules;
  std::string node;
};

struct LeaderArgs {
  std::string listen;
  std::string peers;
  std::uint64_t seed = 0;
};

struct SimArgs {
  std::string scenario;
  std::string mode = "adaptive";
  std::uint64_t seed = 1;
  std::string preset = "rq1";
  std::string rules;
  std::string out;
  std::string trace;
};

struct SimAllArgs {
  std::uint64_t seeds = 10;
  std::string preset = "rq1";
  std::string out;
  std::string trace;
};

int run_follower(const FollowerArgs& a) {
  const auto leader = peer::Endpoint::parse(a.leader);
  const auto settings = peer::load_peer_settings(a.config);
  auto rules = am::rules::load_rules(a.rules);
  std::string node = a.node;
  if (node.empty()) {
    char host[256] = {};
    gethostname(host, sizeof host - 1);
    node = fmt::format("{}-{}", host, getpid());
  }
  peer::Follower follower(node, settings.make_knowledge_base(), std::move(rules));
  for (const auto& spec : settings.indicators) follower.attach_probe(spec.indicator.name, peer::make_probe(spec));

  install_signal_handlers();
  peer::WallClock clock;
  peer::run_follower(follower, leader, clock, g_stop);
  return 0;
}

int run_leader(const LeaderArgs& a) {
  const auto listen = peer::Endpoint::parse(a.listen);
  std::vector<std::string> peers;
  for (const auto& ep : peer::Endpoint::parse_list(a.peers)) peers.push_back(ep.to_string());
  peer::Leader leader(listen.to_string(), peers, am::GossipSettings{}, a.seed);

  install_signal_handlers();
  peer::WallClock clock;
  peer::run_leader(leader, listen, clock, g_stop);
  spdlog::info("{}: stopping with {} entries from {} followers", leader.node(), leader.store().size(),
               leader.followers().size());
  return 0;
}

harness::Preset preset_from(const std::string& text) {
  auto p = harness::parse_preset(text);
  if (!p) throw am::ConfigError(fmt::format("unknown preset '{}' (expected rq1 or default)", text));
  return *p;
}

int run_sim(const SimArgs& a) {
  auto mode = harness::parse_mode(a.mode);
  if (!mode) throw am::ConfigError(fmt::format("unknown mode '{}' (expected adaptive or static)", a.mode));
  const auto preset = preset_from(a.preset);
  std::optional<am::rules::RuleSet> rules;
  if (!a.rules.empty()) rules = am::rules::load_rules(a.rules);

  const auto result = harness::run_experiment(a.scenario, *mode, preset, a.seed, rules);
  harness::write_results(std::span(&result, 1), a.out);
  if (!a.trace.empty()) harness::write_trace(result, a.trace);
  spdlog::info("{} {} seed {}: rmse follower {:.4f} leader {:.4f}, {:.4f} msg/s", result.scenario,
               harness::to_string(result.mode), result.seed, result.rmse_follower, result.rmse_leader,
               result.msgs_per_sec);
  return 0;
}

int run_sim_all(const SimAllArgs& a) {
  if (a.seeds < 1) throw am::ConfigError("--seeds must be >= 1");
  std::vector<std::uint64_t> seeds(a.seeds);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  const auto results = harness::run_matrix(seeds, preset_from(a.preset));
  harness::write_results(results, a.out);
  if (!a.trace.empty()) {
    for (const auto& r : results) harness::write_trace(r, a.trace);
  }
  spdlog::info("wrote {} runs to {}", results.size(), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptivemon: self-adaptive peer-to-peer monitoring"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

  FollowerArgs fa;
  auto* follower = app.add_subcommand("follower", "run a follower peer against a leader");
  follower->add_option("--leader", fa.leader, "leader HOST:PORT")->required();
  follower->add_option("--config", fa.config, "peer configuration JSON")->required();
  follower->add_option("--rules", fa.rules, "adaptation rule file")->required();
  follower->add_option("--node", fa.node, "node id (default: hostname-pid)");

  LeaderArgs la;
  auto* leader = app.add_subcommand("leader", "run a leader peer");
  leader->add_option("--listen", la.listen, "HOST:PORT to listen on")->required();
  leader->add_option("--peers", la.peers, "other leaders, HOST:PORT[,...]");
  leader->add_option("--seed", la.seed, "gossip peer-selection seed")->capture_default_str();

  SimArgs sa;
  auto* sim = app.add_subcommand("sim", "run one simulated experiment");
  sim->add_option("--scenario", sa.scenario, "stable, unstable, stable_unstable, random or spiky")->required();
  sim->add_option("--mode", sa.mode, "adaptive or static")->capture_default_str();
  sim->add_option("--seed", sa.seed)->capture_default_str();
  sim->add_option("--preset", sa.preset, "rq1 or default")->capture_default_str();
  sim->add_option("--rules", sa.rules, "rule file (default: the preset's shipped rules)");
  sim->add_option("--out", sa.out, "results CSV")->required();
  sim->add_option("--trace", sa.trace, "directory for per-second trace CSVs");

  SimAllArgs aa;
  auto* sim_all = app.add_subcommand("sim-all", "run every scenario in both modes for seeds 1..N");
  sim_all->add_option("--seeds", aa.seeds)->capture_default_str();
  sim_all->add_option("--preset", aa.preset, "rq1 or default")->capture_default_str();
  sim_all->add_option("--out", aa.out, "results CSV")->required();
  sim_all->add_option("--trace", aa.trace, "directory for per-second trace CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigErrorExit;
  }

  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::set_pattern("%Y-%m-%d %H:%M:%S.%e %^%l%$ %v");

  try {
    if (*follower) return run_follower(fa);
    if (*leader) return run_leader(la);
    if (*sim) return run_sim(sa);
    return run_sim_all(aa);
  } catch (const am::ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return kConfigErrorExit;
  } catch (const am::ParseError& e) {
    spdlog::error("rule file error: {}", e.what());
    return kConfigErrorExit;
  } catch (const am::UnknownIndicatorError& e) {
    spdlog::error("configuration error: {}", e.what());
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
