#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "adaptivemon/peer/clock.hpp"
#include "adaptivemon/peer/follower.hpp"
#include "adaptivemon/peer/leader.hpp"

namespace adaptivemon::peer {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  /// Parses HOST:PORT (IPv6 hosts in brackets). Throws ConfigError.
  static Endpoint parse(std::string_view text);
  static std::vector<Endpoint> parse_list(std::string_view comma_separated);

  std::string to_string() const;
};

/// Runs a Follower against a Leader over TCP until `stop` is set. Connects
/// (retrying until it succeeds or `stop` is set), sends REGISTER, then cycles
/// on the clock and streams the emitted messages. Sends BYE on shutdown.
void run_follower(Follower& follower, const Endpoint& leader, const Clock& clock, const std::atomic<bool>& stop);

struct LeaderRuntimeOptions {
  /// Invoked once the listening socket is bound, with the actual port.
  std::function<void(std::uint16_t)> on_listening;
};

/// Serves Followers and peer Leaders on `listen` until `stop` is set, and
/// pushes a gossip round every gossip period. The Leader's peer list holds
/// the HOST:PORT strings of the other Leaders.
void run_leader(Leader& leader, const Endpoint& listen, const Clock& clock, const std::atomic<bool>& stop,
                const LeaderRuntimeOptions& opts = {});

}  // namespace adaptivemon::peer
