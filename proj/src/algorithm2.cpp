#include "bigp/algorithm2.hpp"

#include <algorithm>
#include <cassert>

namespace bigp {

bool best_path_prefers(const PathCandidate& a, const PathCandidate& b) {
  if (a.local_pref != b.local_pref) return a.local_pref > b.local_pref;
  if (a.as_path.size() != b.as_path.size()) return a.as_path.size() < b.as_path.size();
  if (a.learned_internal != b.learned_internal) return !a.learned_internal;
  return a.from_peer < b.from_peer;
}

const PathCandidate& best_path(const std::vector<PathCandidate>& candidates) {
  assert(!candidates.empty());
  const PathCandidate* best = &candidates[0];
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (best_path_prefers(candidates[i], *best)) best = &candidates[i];
  return *best;
}

std::optional<PathCandidate> advertise_policy(const PathCandidate& route,
                                              const PeerSession& to_peer,
                                              Asn own_high_asn) {
  if (route.from_peer == to_peer.peer_id) return std::nullopt;  // split horizon
  if (to_peer.kind == PeerKind::INTERNAL && route.learned_internal)
    return std::nullopt;  // internal-learned routes never transit internal peers
  PathCandidate out = route;
  if (to_peer.kind == PeerKind::EXTERNAL)
    out.as_path.insert(out.as_path.begin(), own_high_asn);
  return out;
}

BgpEngine::BgpEngine(RouterConfig cfg, std::vector<ExternalPeerInfo> external_links,
                     EngineHost* host,
                     std::function<bool(const Prefix&)> own_domain_prefix)
    : cfg_(std::move(cfg)),
      host_(host),
      own_domain_prefix_(std::move(own_domain_prefix)) {
  for (const ExternalPeerInfo& e : external_links)
    external_link_peers_[e.peer] = e.peer_domain;
}

bool BgpEngine::is_asbr() const {
  for (const auto& [id, s] : sessions_)
    if (s.kind == PeerKind::EXTERNAL && s.state == SessionPhase::ESTABLISHED)
      return true;
  return false;
}

std::set<RouterId> BgpEngine::established_peers() const {
  std::set<RouterId> out;
  for (const auto& [id, s] : sessions_)
    if (s.state == SessionPhase::ESTABLISHED) out.insert(id);
  return out;
}

std::optional<PathCandidate> BgpEngine::installed_best(const Prefix& p) const {
  auto it = cands_.find(p);
  if (it == cands_.end() || it->second.empty()) return std::nullopt;
  std::vector<PathCandidate> v;
  for (const auto& [peer, c] : it->second) v.push_back(c);
  return best_path(v);
}

void BgpEngine::rebuild_table() {
  table_b_.clear();
  for (const auto& [prefix, by_peer] : cands_) {
    if (by_peer.empty()) continue;
    std::vector<PathCandidate> v;
    for (const auto& [peer, c] : by_peer) v.push_back(c);
    const PathCandidate& best = best_path(v);
    for (const PathCandidate& c : v) {
      TableBEntry e;
      e.prefix = c.prefix;
      e.as_path = c.as_path;
      e.next_hop_peer = c.from_peer;
      e.local_pref = c.local_pref;
      e.learned_internal = c.learned_internal;
      e.installed = (c.from_peer == best.from_peer);
      table_b_.push_back(e);
    }
  }
}

std::map<Prefix, PathCandidate> BgpEngine::desired_out(
    const PeerSession& session) const {
  std::map<Prefix, PathCandidate> out;
  for (const auto& [prefix, by_peer] : cands_) {
    if (by_peer.empty()) continue;
    auto best = installed_best(prefix);
    if (!best) continue;
    if (auto item = advertise_policy(*best, session, cfg_.high_asn())) {
      item->from_peer = cfg_.router_id;  // provenance marker for the receiver/trace
      out[prefix] = *item;
    }
  }
  // Locally originated prefixes are this domain's aggregates; they go to
  // external peers only (internal peers reach them over Table A).
  if (session.kind == PeerKind::EXTERNAL) {
    for (const Prefix& p : cfg_.prefixes) {
      PathCandidate c;
      c.prefix = p;
      c.as_path = {cfg_.high_asn()};
      c.local_pref = 100;
      c.from_peer = cfg_.router_id;
      c.learned_internal = false;
      out[p] = c;
    }
  }
  return out;
}

void BgpEngine::full_resync(SimTime now) {
  (void)now;
  rebuild_table();
  for (auto& [peer, session] : sessions_) {
    if (session.state != SessionPhase::ESTABLISHED) continue;
    std::map<Prefix, PathCandidate> desired = desired_out(session);
    std::map<Prefix, PathCandidate>& current = adj_out_[peer];
    UpdateB delta;
    for (const auto& [prefix, item] : desired) {
      auto it = current.find(prefix);
      if (it == current.end() || !(it->second == item))
        delta.advertised.push_back(item);
    }
    for (const auto& [prefix, item] : current)
      if (!desired.count(prefix)) delta.withdrawn.push_back(prefix);
    if (!delta.advertised.empty() || !delta.withdrawn.empty()) {
      host_->send_bgp(peer, delta, session.kind);
      current = std::move(desired);
    }
  }
}

void BgpEngine::establish_external(RouterId peer, Asn peer_domain, SimTime now) {
  PeerSession& s = sessions_[peer];
  s.peer_id = peer;
  s.peer_high_asn = peer_domain + cfg_.asn_split;
  s.kind = PeerKind::EXTERNAL;
  s.state = SessionPhase::ESTABLISHED;
  s.keepalive_at = now;
  adj_out_[peer].clear();
  if (keepalive_chain_.insert(peer).second)
    host_->arm_timer(now + sim_seconds(kKeepaliveIntervalS),
                     TimerKind::KeepaliveTick, peer);
  host_->arm_timer(now + sim_seconds(kHoldIntervalS), TimerKind::HoldExpiry, peer);
  full_resync(now);
}

void BgpEngine::establish_internal(RouterId peer, SimTime now) {
  PeerSession& s = sessions_[peer];
  s.peer_id = peer;
  s.peer_high_asn = cfg_.high_asn();
  s.kind = PeerKind::INTERNAL;
  s.state = SessionPhase::ESTABLISHED;
  s.keepalive_at = now;
  adj_out_[peer].clear();
  full_resync(now);
}

void BgpEngine::session_down(RouterId peer, SimTime now) {
  auto it = sessions_.find(peer);
  if (it == sessions_.end() || it->second.state == SessionPhase::IDLE) return;
  it->second.state = SessionPhase::IDLE;
  adj_out_.erase(peer);
  for (auto& [prefix, by_peer] : cands_) by_peer.erase(peer);
  for (auto cit = cands_.begin(); cit != cands_.end();)
    cit = cit->second.empty() ? cands_.erase(cit) : std::next(cit);
  full_resync(now);
}

void BgpEngine::on_external_link_up(RouterId peer, SimTime now) {
  auto it = external_link_peers_.find(peer);
  if (it == external_link_peers_.end()) return;
  auto sit = sessions_.find(peer);
  if (sit != sessions_.end() && sit->second.state == SessionPhase::ESTABLISHED)
    return;  // session rode out the blip
  establish_external(peer, it->second, now);
}

void BgpEngine::on_update(RouterId from_peer, const UpdateB& update, SimTime now) {
  auto sit = sessions_.find(from_peer);
  if (sit == sessions_.end() || sit->second.state != SessionPhase::ESTABLISHED) {
    host_->count("SessionNotEstablished");
    return;
  }
  const PeerSession& session = sit->second;

  bool changed = false;
  for (const Prefix& p : update.withdrawn) {
    auto cit = cands_.find(p);
    if (cit == cands_.end()) continue;
    if (cit->second.erase(from_peer)) changed = true;
    if (cit->second.empty()) cands_.erase(cit);
  }
  for (const PathCandidate& item : update.advertised) {
    if (std::find(item.as_path.begin(), item.as_path.end(), cfg_.high_asn()) !=
        item.as_path.end()) {
      ++loop_rejections_;
      host_->count("AsPathLoop");
      continue;
    }
    if (item.as_path.empty()) {
      host_->count("EmptyAsPath");
      continue;
    }
    if (own_domain_prefix_ && own_domain_prefix_(item.prefix)) {
      host_->count("OwnDomainPrefixRejected");
      continue;
    }
    PathCandidate c = item;
    c.from_peer = from_peer;
    c.learned_internal = session.kind == PeerKind::INTERNAL;
    auto lp = peer_lp_.find(from_peer);
    if (lp != peer_lp_.end())
      c.local_pref = lp->second;
    else if (session.kind == PeerKind::EXTERNAL)
      c.local_pref = 100;  // LOCAL_PREF is a domain-internal attribute
    cands_[c.prefix][from_peer] = c;
    changed = true;
  }
  if (changed) full_resync(now);
}

void BgpEngine::on_keepalive(RouterId peer, SimTime now) {
  auto it = sessions_.find(peer);
  if (it == sessions_.end() || it->second.state != SessionPhase::ESTABLISHED ||
      it->second.kind != PeerKind::EXTERNAL)
    return;
  it->second.keepalive_at = now;
  host_->arm_timer(now + sim_seconds(kHoldIntervalS), TimerKind::HoldExpiry, peer);
}

void BgpEngine::on_timer(TimerKind kind, RouterId key, SimTime now) {
  auto it = sessions_.find(key);
  if (it == sessions_.end()) return;
  PeerSession& s = it->second;
  switch (kind) {
    case TimerKind::KeepaliveTick:
      // The chain keeps ticking across session incarnations; sends are gated.
      if (s.state == SessionPhase::ESTABLISHED && s.kind == PeerKind::EXTERNAL)
        host_->send_keepalive(key);
      host_->arm_timer(now + sim_seconds(kKeepaliveIntervalS),
                       TimerKind::KeepaliveTick, key);
      break;
    case TimerKind::HoldExpiry:
      if (s.state == SessionPhase::ESTABLISHED && s.kind == PeerKind::EXTERNAL &&
          now - s.keepalive_at >= sim_seconds(kHoldIntervalS))
        session_down(key, now);
      break;
    default:
      break;
  }
}

void BgpEngine::set_peer_local_pref(RouterId peer, std::uint32_t lp, SimTime now) {
  peer_lp_[peer] = lp;
  bool changed = false;
  for (auto& [prefix, by_peer] : cands_) {
    auto it = by_peer.find(peer);
    if (it != by_peer.end() && it->second.local_pref != lp) {
      it->second.local_pref = lp;
      changed = true;
    }
  }
  if (changed) full_resync(now);
}

void BgpEngine::update_internal_mesh(const std::set<RouterId>& reachable_asbrs,
                                     SimTime now) {
  std::vector<RouterId> to_drop;
  if (!is_asbr()) {
    for (const auto& [id, s] : sessions_)
      if (s.kind == PeerKind::INTERNAL && s.state == SessionPhase::ESTABLISHED)
        to_drop.push_back(id);
    for (RouterId id : to_drop) session_down(id, now);
    return;
  }
  for (RouterId id : reachable_asbrs) {
    if (id == cfg_.router_id) continue;
    auto it = sessions_.find(id);
    if (it == sessions_.end() || it->second.state == SessionPhase::IDLE)
      establish_internal(id, now);
  }
  for (const auto& [id, s] : sessions_)
    if (s.kind == PeerKind::INTERNAL && s.state == SessionPhase::ESTABLISHED &&
        !reachable_asbrs.count(id))
      to_drop.push_back(id);
  for (RouterId id : to_drop) session_down(id, now);
}

}  // namespace bigp
