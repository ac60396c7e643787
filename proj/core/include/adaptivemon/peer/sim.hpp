#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "adaptivemon/peer/clock.hpp"
#include "adaptivemon/peer/follower.hpp"
#include "adaptivemon/peer/leader.hpp"
#include "adaptivemon/peer/messages.hpp"

namespace adaptivemon::peer {

/// Discrete-event scheduler over virtual time. Events at equal times run in
/// scheduling order.
class EventQueue final : public Clock {
 public:
  double now() const override { return now_; }

  /// Schedules `fn` at max(t, now()).
  void schedule(double t, std::function<void()> fn);

  /// Runs events with time < `end`. The clock finishes at `end`.
  void run_until(double end);

  bool empty() const noexcept { return events_.empty(); }

 private:
  struct Event {
    double time;
    std::uint64_t seq;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t seq_ = 0;
  double now_ = 0.0;
};

struct LinkStats {
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  std::map<std::string, std::uint64_t, std::less<>> by_type;
};

/// In-process transport. Messages are encoded to bytes, delayed by the link
/// latency and decoded through a LineFramer at the receiver, exactly as on a
/// socket.
class SimNetwork {
 public:
  using Handler = std::function<void(const Message&)>;

  explicit SimNetwork(EventQueue& events, double latency = 0.0) : events_(events), latency_(latency) {}

  void attach(const std::string& address, Handler handler);
  void send(const std::string& from, const std::string& to, const Message& m);

  const LinkStats& stats() const noexcept { return stats_; }

 private:
  EventQueue& events_;
  double latency_;
  std::map<std::string, Handler, std::less<>> handlers_;
  std::map<std::pair<std::string, std::string>, LineFramer> links_;
  LinkStats stats_;
};

/// Drives a Follower on the event queue: registers with `leader`, then runs a
/// cycle whenever an indicator is due and sends what it emits.
void schedule_follower(EventQueue& events, SimNetwork& net, Follower& follower, const std::string& leader,
                       double start = 0.0);

/// Attaches a Leader to the network and starts its gossip timer. The first
/// round fires at `first_round` (defaults to one gossip period).
void schedule_leader(EventQueue& events, SimNetwork& net, Leader& leader, double first_round = -1.0);

}  // namespace adaptivemon::peer
