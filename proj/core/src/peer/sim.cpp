#include "adaptivemon/peer/sim.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon::peer {

void EventQueue::schedule(double t, std::function<void()> fn) {
  events_.push(Event{std::max(t, now_), seq_++, std::move(fn)});
}

void EventQueue::run_until(double end) {
  while (!events_.empty() && events_.top().time < end) {
    Event e = events_.top();
    events_.pop();
    now_ = e.time;
    e.fn();
  }
  now_ = std::max(now_, end);
}

void SimNetwork::attach(const std::string& address, Handler handler) {
  if (!handlers_.emplace(address, std::move(handler)).second) {
    throw ConfigError("address already attached: " + address);
  }
}

void SimNetwork::send(const std::string& from, const std::string& to, const Message& m) {
  std::string bytes = encode_message(m);
  ++stats_.messages;
  stats_.bytes += bytes.size();
  ++stats_.by_type[std::string(message_type(m))];

  events_.schedule(events_.now() + latency_, [this, from, to, bytes = std::move(bytes)] {
    auto handler = handlers_.find(to);
    if (handler == handlers_.end()) {
      spdlog::debug("sim: no peer at {}, dropping message from {}", to, from);
      return;
    }
    auto& framer = links_[{from, to}];
    framer.feed(bytes);
    while (auto line = framer.next()) {
      try {
        handler->second(decode_message(*line));
      } catch (const DecodeError& e) {
        spdlog::warn("sim: dropping malformed message from {}: {}", from, e.what());
      }
    }
  });
}

namespace {

void follower_step(EventQueue& events, SimNetwork& net, Follower& f, const std::string& leader) {
  for (const auto& m : f.cycle(events.now())) net.send(f.node(), leader, m);
  if (auto due = f.next_due()) {
    events.schedule(*due, [&events, &net, &f, leader] { follower_step(events, net, f, leader); });
  }
}

void leader_step(EventQueue& events, SimNetwork& net, Leader& l) {
  for (const auto& [to, m] : l.gossip_tick()) net.send(l.node(), to, m);
  events.schedule(events.now() + l.gossip().period, [&events, &net, &l] { leader_step(events, net, l); });
}

}  // namespace

void schedule_follower(EventQueue& events, SimNetwork& net, Follower& follower, const std::string& leader,
                       double start) {
  events.schedule(start, [&events, &net, &follower, leader] {
    net.send(follower.node(), leader, follower.register_message());
    follower_step(events, net, follower, leader);
  });
}

void schedule_leader(EventQueue& events, SimNetwork& net, Leader& leader, double first_round) {
  net.attach(leader.node(), [&events, &leader](const Message& m) { leader.on_message(m, events.now()); });
  const double first = first_round >= 0 ? first_round : leader.gossip().period;
  events.schedule(first, [&events, &net, &leader] { leader_step(events, net, leader); });
}

}  // namespace adaptivemon::peer
