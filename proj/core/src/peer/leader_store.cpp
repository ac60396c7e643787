#include "adaptivemon/peer/leader_store.hpp"

#include <tuple>

#include "adaptivemon/error.hpp"

namespace adaptivemon::peer {

bool newer(const GossipEntry& a, const GossipEntry& b) noexcept {
  return std::tie(a.ts, a.mean, a.var, a.n) > std::tie(b.ts, b.mean, b.var, b.n);
}

bool LeaderStore::handle_report(const Report& r, double arrival) {
  log_.push_back({arrival, r});
  while (log_.size() > log_capacity_) log_.pop_front();

  Key key{r.node, r.indicator};
  auto it = entries_.find(key);
  if (it != entries_.end() && !(r.ts > it->second.ts)) return false;
  entries_[std::move(key)] = GossipEntry{r.node, r.indicator, r.ts, r.mean, r.var, r.n};
  return true;
}

std::size_t LeaderStore::merge_gossip(std::span<const GossipEntry> entries) {
  std::size_t changed = 0;
  for (const auto& e : entries) {
    auto [it, inserted] = entries_.try_emplace(Key{e.origin, e.indicator}, e);
    if (inserted) {
      ++changed;
    } else if (newer(e, it->second)) {
      it->second = e;
      ++changed;
    }
  }
  return changed;
}

std::vector<GossipEntry> LeaderStore::entries() const {
  std::vector<GossipEntry> out;
  out.reserve(entries_.size());
  for (const auto& [_, e] : entries_) out.push_back(e);
  return out;
}

const GossipEntry* LeaderStore::find(std::string_view origin, std::string_view indicator) const {
  auto it = entries_.find(Key{std::string(origin), std::string(indicator)});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, Gossip>> gossip_round(const LeaderStore& store, const std::string& self,
                                                         std::span<const std::string> peers, std::size_t fanout,
                                                         Rng& rng) {
  if (fanout < 1) throw ConfigError("gossip fanout must be >= 1");
  std::vector<std::pair<std::string, Gossip>> out;
  if (peers.empty()) return out;
  const auto entries = store.entries();
  for (std::size_t i : rng.choose(peers.size(), fanout)) {
    out.emplace_back(peers[i], Gossip{self, entries});
  }
  return out;
}

}  // namespace adaptivemon::peer
