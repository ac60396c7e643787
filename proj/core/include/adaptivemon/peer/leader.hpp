#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adaptivemon/peer/leader_store.hpp"
#include "adaptivemon/peer/messages.hpp"
#include "adaptivemon/random.hpp"
#include "adaptivemon/types.hpp"

namespace adaptivemon::peer {

/// An upper-tier peer: collects Follower reports and gossips its store to
/// other Leaders. Transport-agnostic.
class Leader {
 public:
  Leader(std::string node, std::vector<std::string> peers, GossipSettings gossip, std::uint64_t seed);

  const std::string& node() const noexcept { return node_; }
  const std::vector<std::string>& peers() const noexcept { return peers_; }
  const GossipSettings& gossip() const noexcept { return gossip_; }

  /// Handles one inbound message received at `now`.
  void on_message(const Message& m, double now);

  /// One gossip round: (destination, message) pairs to send.
  std::vector<std::pair<std::string, Message>> gossip_tick();

  const LeaderStore& store() const noexcept { return store_; }
  const std::set<std::string>& followers() const noexcept { return followers_; }

 private:
  std::string node_;
  std::vector<std::string> peers_;
  GossipSettings gossip_;
  Rng rng_;
  LeaderStore store_;
  std::set<std::string> followers_;
};

}  // namespace adaptivemon::peer
