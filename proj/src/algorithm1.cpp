#include "bigp/algorithm1.hpp"

#include <algorithm>
#include <queue>

namespace bigp {

const char* to_string(NeighborPhase p) {
  switch (p) {
    case NeighborPhase::DOWN: return "DOWN";
    case NeighborPhase::INIT: return "INIT";
    case NeighborPhase::FULL: return "FULL";
  }
  return "?";
}

const char* to_string(UpdateTag t) {
  switch (t) {
    case UpdateTag::None: return "none";
    case UpdateTag::Refresh: return "refresh";
    case UpdateTag::Triggered: return "triggered";
    case UpdateTag::Snapshot: return "snapshot";
  }
  return "?";
}

const char* to_string(PeerKind k) { return k == PeerKind::EXTERNAL ? "ext" : "int"; }

bool Lsdb::store_if_newer(const Lsa& lsa) {
  auto it = by_origin.find(lsa.origin_id);
  if (it != by_origin.end() && it->second.seq >= lsa.seq) return false;
  by_origin[lsa.origin_id] = lsa;
  return true;
}

std::vector<std::uint8_t> Lsdb::canonical_bytes() const {
  UpdateA all;
  for (const auto& [origin, lsa] : by_origin) all.lsas.push_back(lsa);
  BigpHeader h;
  h.cbi = true;
  h.asn = 1;
  h.msg_type = MsgType::UPDATE_A;
  return encode(h, MessageBody{all});
}

DrResult elect_dr_bdr(const std::vector<std::pair<RouterId, std::uint8_t>>& members) {
  std::vector<std::pair<RouterId, std::uint8_t>> eligible;
  for (const auto& m : members)
    if (m.second > 0) eligible.push_back(m);
  std::sort(eligible.begin(), eligible.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first > b.first;
  });
  DrResult r;
  if (!eligible.empty()) r.dr = eligible[0].first;
  if (eligible.size() > 1) r.bdr = eligible[1].first;
  return r;
}

SpfResult run_spf(const Lsdb& lsdb, RouterId self, const RouterConfig& cfg) {
  (void)cfg;
  SpfResult result;

  // Symmetric-link check: an edge exists only if both ends advertise it.
  std::map<RouterId, std::vector<std::pair<RouterId, std::uint32_t>>> adj;
  for (const auto& [origin, lsa] : lsdb.by_origin) {
    for (auto [peer, cost] : lsa.links) {
      auto pit = lsdb.by_origin.find(peer);
      if (pit == lsdb.by_origin.end()) continue;
      bool mutual = false;
      for (auto [back, c2] : pit->second.links)
        if (back == origin) mutual = true;
      if (mutual) adj[origin].emplace_back(peer, cost);
    }
  }

  std::map<RouterId, std::uint32_t> dist;
  std::map<RouterId, RouterId> first_hop;
  std::set<RouterId> settled;
  dist[self] = 0;

  using QItem = std::pair<std::uint32_t, RouterId>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
  pq.push({0, self});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (settled.count(u)) continue;
    settled.insert(u);
    auto ait = adj.find(u);
    if (ait == adj.end()) continue;
    for (auto [v, w] : ait->second) {
      std::uint32_t cand = d + w;
      RouterId cand_fh = (u == self) ? v : first_hop[u];
      auto dit = dist.find(v);
      if (dit == dist.end() || cand < dit->second) {
        dist[v] = cand;
        first_hop[v] = cand_fh;
        pq.push({cand, v});
      } else if (cand == dit->second && cand_fh < first_hop[v]) {
        first_hop[v] = cand_fh;
      }
    }
  }

  std::map<Prefix, TableAEntry> entries;
  auto self_lsa = lsdb.by_origin.find(self);
  if (self_lsa != lsdb.by_origin.end()) {
    for (const Prefix& p : self_lsa->second.prefixes)
      entries[p] = TableAEntry{p, std::nullopt, 0, RouteOrigin::INTRA, std::nullopt};
  }
  for (const auto& [origin, lsa] : lsdb.by_origin) {
    if (origin == self) continue;
    auto dit = dist.find(origin);
    if (dit == dist.end()) continue;
    result.node_paths[origin] = {first_hop[origin], dit->second};
    for (const Prefix& p : lsa.prefixes) {
      TableAEntry e{p, first_hop[origin], dit->second, RouteOrigin::INTRA,
                    std::nullopt};
      auto eit = entries.find(p);
      if (eit == entries.end() || e.cost < eit->second.cost ||
          (e.cost == eit->second.cost &&
           e.next_hop.value_or(0) < eit->second.next_hop.value_or(0)))
        entries[p] = e;
    }
  }
  for (auto& [p, e] : entries) result.entries.push_back(e);
  return result;
}

std::optional<TableAEntry> derive_default_routes(const Lsdb& lsdb, RouterId self,
                                                 const SpfResult& spf,
                                                 bool self_is_asbr) {
  if (self_is_asbr) return std::nullopt;
  std::optional<RouterId> best_asbr;
  std::uint32_t best_cost = 0;
  for (const auto& [origin, lsa] : lsdb.by_origin) {
    if (origin == self || !lsa.is_asbr) continue;
    auto it = spf.node_paths.find(origin);
    if (it == spf.node_paths.end()) continue;
    std::uint32_t cost = it->second.second;
    if (!best_asbr || cost < best_cost || (cost == best_cost && origin < *best_asbr)) {
      best_asbr = origin;
      best_cost = cost;
    }
  }
  if (!best_asbr) return std::nullopt;
  TableAEntry e;
  e.prefix = Prefix{0, 0};
  e.next_hop = spf.node_paths.at(*best_asbr).first;
  e.cost = best_cost;
  e.origin = RouteOrigin::ASBR_DEFAULT;
  e.via_asbr = best_asbr;
  return e;
}

IgpEngine::IgpEngine(RouterConfig cfg, std::vector<IgpLinkInfo> links,
                     EngineHost* host)
    : cfg_(std::move(cfg)), links_(std::move(links)), host_(host) {
  for (const IgpLinkInfo& l : links_) {
    link_by_peer_[l.peer] = l;
    if (l.same_domain) neighbors_[l.peer] = NeighborState{l.peer};
  }
}

bool IgpEngine::has_intra_link() const { return !neighbors_.empty(); }

std::set<RouterId> IgpEngine::full_neighbors() const {
  std::set<RouterId> out;
  for (const auto& [id, nb] : neighbors_)
    if (nb.state == NeighborPhase::FULL) out.insert(id);
  return out;
}

void IgpEngine::start(SimTime now) {
  started_ = true;
  own_seq_ = 0;
  originate(UpdateTag::Triggered, now);  // no FULL neighbors yet; stored only
  for (const IgpLinkInfo& l : links_) send_hello(l.peer);
  host_->arm_timer(now + sim_seconds(cfg_.hello_interval_s), TimerKind::HelloTick, 0);
  if (has_intra_link()) {
    SimTime period = sim_seconds(cfg_.refresh_interval_s);
    host_->arm_timer((now / period + 1) * period, TimerKind::Refresh, 0);
  }
  recompute(now);
}

void IgpEngine::send_hello(RouterId to) {
  Hello h;
  h.priority = cfg_.priority;
  auto it = neighbors_.find(to);
  if (it != neighbors_.end() && it->second.state != NeighborPhase::DOWN)
    h.seen_neighbors.push_back(to);
  host_->send_igp(to, MsgType::HELLO, MessageBody{h}, UpdateTag::None);
}

void IgpEngine::originate(UpdateTag tag, SimTime now) {
  Lsa lsa;
  lsa.origin_id = cfg_.router_id;
  lsa.seq = ++own_seq_;
  for (const auto& [id, nb] : neighbors_)
    if (nb.state == NeighborPhase::FULL)
      lsa.links.emplace_back(id, link_by_peer_.at(id).cost);
  lsa.prefixes = cfg_.prefixes;
  lsa.is_asbr = is_asbr_;
  lsa.is_stub = cfg_.stub;
  lsa.age_at = now;
  lsdb_.store_if_newer(lsa);
  flood({lsa}, std::nullopt, tag);
}

void IgpEngine::flood(const std::vector<Lsa>& lsas, std::optional<RouterId> except,
                      UpdateTag tag) {
  if (lsas.empty()) return;
  UpdateA u{lsas};
  for (const auto& [id, nb] : neighbors_) {
    if (nb.state != NeighborPhase::FULL) continue;
    if (except && *except == id) continue;
    host_->send_igp(id, MsgType::UPDATE_A, MessageBody{u}, tag);
  }
}

void IgpEngine::on_hello(RouterId from, Asn stamped_asn, const Hello& hello,
                         SimTime now) {
  if (stamped_asn != cfg_.domain_asn) {
    host_->count("IgnoredCrossDomain");
    return;
  }
  auto it = neighbors_.find(from);
  if (it == neighbors_.end()) {
    host_->count("HelloFromUnknownNeighbor");
    return;
  }
  NeighborState& nb = it->second;
  nb.priority = hello.priority;
  nb.last_hello_at = now;
  host_->arm_timer(now + sim_seconds(cfg_.dead_interval_s), TimerKind::NeighborDead,
                   from);

  bool lists_self = std::find(hello.seen_neighbors.begin(),
                              hello.seen_neighbors.end(),
                              cfg_.router_id) != hello.seen_neighbors.end();
  if (nb.state == NeighborPhase::DOWN) {
    nb.state = NeighborPhase::INIT;
    send_hello(from);  // immediate reply so the peer sees us without waiting a tick
  }
  if (nb.state == NeighborPhase::INIT && lists_self) {
    nb.state = NeighborPhase::FULL;
    originate(UpdateTag::Triggered, now);
    // Snapshot sync: ship the entire database to the new adjacency.
    UpdateA snapshot;
    for (const auto& [origin, lsa] : lsdb_.by_origin) snapshot.lsas.push_back(lsa);
    host_->send_igp(from, MsgType::UPDATE_A, MessageBody{snapshot},
                    UpdateTag::Snapshot);
    recompute(now);
  } else if (nb.state == NeighborPhase::FULL && !lists_self) {
    // Peer no longer sees us; fall back and re-converge.
    nb.state = NeighborPhase::INIT;
    originate(UpdateTag::Triggered, now);
    recompute(now);
  }
  recompute_elections();
}

void IgpEngine::on_update_a(RouterId from, Asn stamped_asn, const UpdateA& update,
                            UpdateTag tag, SimTime now) {
  if (stamped_asn != cfg_.domain_asn) {
    host_->count("IgnoredCrossDomain");
    return;
  }
  auto it = neighbors_.find(from);
  if (it == neighbors_.end() || it->second.state == NeighborPhase::DOWN) {
    host_->count("UpdateFromNonAdjacent");
    return;
  }
  std::vector<Lsa> stored;
  for (const Lsa& lsa : update.lsas) {
    if (lsa.origin_id == cfg_.router_id) continue;  // never overwrite own LSA
    if (lsdb_.store_if_newer(lsa)) stored.push_back(lsa);
  }
  if (!stored.empty()) {
    flood(stored, from, tag);
    recompute(now);
  }
}

void IgpEngine::teardown(NeighborState& nb, SimTime now) {
  nb.state = NeighborPhase::DOWN;
  originate(UpdateTag::Triggered, now);
  recompute(now);
  recompute_elections();
}

void IgpEngine::on_timer(TimerKind kind, RouterId key, SimTime now) {
  switch (kind) {
    case TimerKind::HelloTick:
      for (const IgpLinkInfo& l : links_) send_hello(l.peer);
      host_->arm_timer(now + sim_seconds(cfg_.hello_interval_s),
                       TimerKind::HelloTick, 0);
      break;
    case TimerKind::NeighborDead: {
      auto it = neighbors_.find(key);
      if (it == neighbors_.end()) break;
      NeighborState& nb = it->second;
      if (nb.state == NeighborPhase::DOWN) break;
      if (now - nb.last_hello_at >= sim_seconds(cfg_.dead_interval_s))
        teardown(nb, now);
      break;
    }
    case TimerKind::Refresh: {
      if (has_intra_link()) originate(UpdateTag::Refresh, now);
      SimTime period = sim_seconds(cfg_.refresh_interval_s);
      host_->arm_timer((now / period + 1) * period, TimerKind::Refresh, 0);
      break;
    }
    default:
      break;
  }
}

void IgpEngine::on_link_up(RouterId peer, SimTime now) {
  (void)now;
  if (!started_) return;
  if (link_by_peer_.count(peer)) send_hello(peer);
}

void IgpEngine::set_asbr(bool asbr, SimTime now) {
  if (asbr == is_asbr_) return;
  is_asbr_ = asbr;
  if (started_) {
    originate(UpdateTag::Triggered, now);
    recompute(now);
  }
}

void IgpEngine::recompute(SimTime now) {
  (void)now;
  SpfResult spf = run_spf(lsdb_, cfg_.router_id, cfg_);
  node_paths_ = spf.node_paths;
  TableA next = spf.entries;
  if (auto def = derive_default_routes(lsdb_, cfg_.router_id, spf, is_asbr_))
    next.push_back(*def);
  table_a_ = std::move(next);
}

void IgpEngine::recompute_elections() {
  segment_roles_.clear();
  std::map<std::string, std::vector<std::pair<RouterId, std::uint8_t>>> members;
  for (const IgpLinkInfo& l : links_) {
    if (!l.segment || !l.same_domain) continue;
    auto it = neighbors_.find(l.peer);
    if (it == neighbors_.end() || it->second.state == NeighborPhase::DOWN) continue;
    members[*l.segment].emplace_back(l.peer, it->second.priority);
  }
  for (auto& [segment, list] : members) {
    list.emplace_back(cfg_.router_id, cfg_.priority);
    if (list.size() < 3) continue;  // elections only on multi-access segments
    segment_roles_[segment] = elect_dr_bdr(list);
  }
}

}  // namespace bigp
