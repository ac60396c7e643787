#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adaptivemon/peer/messages.hpp"
#include "adaptivemon/random.hpp"

namespace adaptivemon::peer {

struct ReceivedReport {
  double arrival = 0.0;
  Report report;
};

/// Global view held by a Leader: the newest entry per (origin, indicator).
class LeaderStore {
 public:
  using Key = std::pair<std::string, std::string>;

  explicit LeaderStore(std::size_t log_capacity = 100000) : log_capacity_(log_capacity) {}

  /// Logs the report and replaces the entry iff r.ts is strictly newer.
  /// Returns whether the entry changed.
  bool handle_report(const Report& r, double arrival);

  /// Newest-timestamp-wins merge. Equal timestamps are resolved by the larger
  /// (mean, var, n), so merging is commutative, associative and idempotent.
  /// Returns the number of entries that changed.
  std::size_t merge_gossip(std::span<const GossipEntry> entries);

  /// All entries ordered by (origin, indicator).
  std::vector<GossipEntry> entries() const;
  const GossipEntry* find(std::string_view origin, std::string_view indicator) const;
  std::size_t size() const noexcept { return entries_.size(); }

  const std::deque<ReceivedReport>& log() const noexcept { return log_; }

  bool same_entries(const LeaderStore& other) const { return entries_ == other.entries_; }

 private:
  std::map<Key, GossipEntry> entries_;
  std::deque<ReceivedReport> log_;
  std::size_t log_capacity_;
};

/// True when `a` should replace `b` under the merge order.
bool newer(const GossipEntry& a, const GossipEntry& b) noexcept;

/// Picks min(fanout, peers.size()) distinct peers uniformly and addresses each
/// a GOSSIP carrying the full entry set. Returns (peer, message) pairs.
std::vector<std::pair<std::string, Gossip>> gossip_round(const LeaderStore& store, const std::string& self,
                                                         std::span<const std::string> peers, std::size_t fanout,
                                                         Rng& rng);

}  // namespace adaptivemon::peer
