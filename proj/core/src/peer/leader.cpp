#include "adaptivemon/peer/leader.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon::peer {

Leader::Leader(std::string node, std::vector<std::string> peers, GossipSettings gossip, std::uint64_t seed)
    : node_(std::move(node)), peers_(std::move(peers)), gossip_(gossip), rng_(seed) {
  if (node_.empty()) throw ConfigError("leader node id must be non-empty");
  if (gossip_.fanout < 1) throw ConfigError("gossip fanout must be >= 1");
  if (!(gossip_.period > 0)) throw ConfigError("gossip period must be > 0");
  std::erase(peers_, node_);
}

void Leader::on_message(const Message& m, double now) {
  std::visit(
      [&](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, Register>) {
          if (msg.role == Role::follower) followers_.insert(msg.node);
          spdlog::debug("{}: {} {} registered", node_, msg.role == Role::follower ? "follower" : "leader", msg.node);
        } else if constexpr (std::is_same_v<T, Report>) {
          store_.handle_report(msg, now);
        } else if constexpr (std::is_same_v<T, Gossip>) {
          store_.merge_gossip(msg.entries);
        } else {
          followers_.erase(msg.node);
          spdlog::debug("{}: {} left", node_, msg.node);
        }
      },
      m);
}

std::vector<std::pair<std::string, Message>> Leader::gossip_tick() {
  std::vector<std::pair<std::string, Message>> out;
  for (auto& [to, g] : gossip_round(store_, node_, peers_, gossip_.fanout, rng_)) out.emplace_back(to, std::move(g));
  return out;
}

}  // namespace adaptivemon::peer
