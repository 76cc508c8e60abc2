#include "bigp/sim.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace bigp {

struct World::Envelope {
  std::vector<std::uint8_t> bytes;
  BigpHeader header;
  UpdateTag tag = UpdateTag::None;
  std::string summary;
  std::optional<RouterId> session_dst;
  PeerKind session_kind = PeerKind::EXTERNAL;
  int ping_id = -1;
  std::vector<RouterId> hops;
  bool restamped = false;
  int relay_hops = 0;
};

struct World::Event {
  enum class Kind { Startup, Deliver, Keepalive, Timer, Action, Dump };

  SimTime time = 0;
  std::uint64_t seq = 0;
  Kind kind = Kind::Startup;
  // Deliver / Keepalive
  std::size_t link = 0;
  RouterId from = 0;
  RouterId to = 0;
  std::uint64_t epoch = 0;
  std::shared_ptr<Envelope> env;
  // Timer
  RouterId router = 0;
  TimerKind tkind = TimerKind::HelloTick;
  RouterId tkey = 0;
  // Action
  ActionSpec action;
  // Dump
  RouterId dump_router = 0;
};

struct World::EventQueue {
  struct Cmp {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Cmp> pq;
};

struct World::RouterNode : EngineHost {
  World* world = nullptr;
  RouterConfig cfg;
  std::unique_ptr<IgpEngine> igp;
  std::unique_ptr<BgpEngine> bgp;
  std::map<RouterId, std::size_t> link_to_peer;
  std::map<std::string, std::uint64_t> counters;

  void send_igp(RouterId to, MsgType type, const MessageBody& body,
                UpdateTag tag) override {
    world->igp_send(*this, to, type, body, tag);
  }
  void send_bgp(RouterId peer, const UpdateB& body, PeerKind kind) override {
    world->bgp_send(*this, peer, body, kind);
  }
  void send_keepalive(RouterId peer) override { world->keepalive_send(*this, peer); }
  void arm_timer(SimTime at, TimerKind kind, RouterId key) override {
    Event ev;
    ev.time = at;
    ev.kind = Event::Kind::Timer;
    ev.router = cfg.router_id;
    ev.tkind = kind;
    ev.tkey = key;
    world->push_event(std::move(ev));
  }
  void count(const char* counter) override {
    world->count_drop(this, counter);
  }
};

namespace {

std::string hello_summary(const Hello& h) {
  std::ostringstream os;
  os << "prio=" << static_cast<int>(h.priority) << " seen=[";
  for (std::size_t i = 0; i < h.seen_neighbors.size(); ++i) {
    if (i) os << ',';
    os << router_name(h.seen_neighbors[i]);
  }
  os << ']';
  return os.str();
}

std::string update_a_summary(const UpdateA& u, UpdateTag tag) {
  std::ostringstream os;
  os << "tag=" << to_string(tag) << " lsas=[";
  for (std::size_t i = 0; i < u.lsas.size(); ++i) {
    if (i) os << ',';
    os << router_name(u.lsas[i].origin_id) << ':' << u.lsas[i].seq;
  }
  os << ']';
  return os.str();
}

std::string update_b_summary(RouterId peer, PeerKind kind, const UpdateB& u) {
  std::ostringstream os;
  os << "peer=" << router_name(peer) << " kind=" << to_string(kind) << " adv=[";
  for (std::size_t i = 0; i < u.advertised.size(); ++i) {
    const PathCandidate& c = u.advertised[i];
    if (i) os << "; ";
    os << c.prefix.str() << " path=";
    for (std::size_t k = 0; k < c.as_path.size(); ++k) {
      if (k) os << ',';
      os << c.as_path[k];
    }
    os << " lp=" << c.local_pref << " int=" << (c.learned_internal ? 1 : 0);
  }
  os << "] wd=[";
  for (std::size_t i = 0; i < u.withdrawn.size(); ++i) {
    if (i) os << ',';
    os << u.withdrawn[i].str();
  }
  os << ']';
  return os.str();
}

std::string data_summary(const Data& d, int ping_id) {
  std::ostringstream os;
  os << "dest=" << format_addr(d.dest_addr) << " hop=" << static_cast<int>(d.hop_count)
     << " ping=" << ping_id;
  return os.str();
}

bool is_blocking(const BigpHeader& h, UpdateTag tag) {
  if (h.msg_type == MsgType::UPDATE_B) return true;
  return h.msg_type == MsgType::UPDATE_A && tag != UpdateTag::Refresh;
}

}  // namespace

World::World(const Scenario& scenario, std::uint64_t seed)
    : scenario_(scenario), rng_(seed), queue_(std::make_unique<EventQueue>()) {

  std::map<RouterId, Asn> domain_of;
  for (const RouterConfig& cfg : scenario_.topology.nodes) {
    domain_of[cfg.router_id] = cfg.domain_asn;
    for (const Prefix& p : cfg.prefixes) domain_prefixes_[cfg.domain_asn].insert(p);
  }

  for (std::size_t i = 0; i < scenario_.topology.links.size(); ++i) {
    const LinkSpec& l = scenario_.topology.links[i];
    links_.push_back(LinkRuntime{l, true, 0});
    auto key = std::minmax(l.a, l.b);
    link_ids_[{key.first, key.second}] = i;
  }

  for (const RouterConfig& cfg : scenario_.topology.nodes) {
    auto rn = std::make_unique<RouterNode>();
    rn->world = this;
    rn->cfg = cfg;
    std::vector<IgpLinkInfo> igp_links;
    std::vector<ExternalPeerInfo> ext_peers;
    for (std::size_t i = 0; i < links_.size(); ++i) {
      const LinkSpec& l = links_[i].spec;
      if (l.a != cfg.router_id && l.b != cfg.router_id) continue;
      RouterId peer = l.a == cfg.router_id ? l.b : l.a;
      rn->link_to_peer[peer] = i;
      bool same_domain = domain_of.at(peer) == cfg.domain_asn;
      igp_links.push_back(IgpLinkInfo{peer, l.cost, same_domain, l.segment});
      if (!same_domain) ext_peers.push_back(ExternalPeerInfo{peer, domain_of.at(peer)});
    }
    Asn domain = cfg.domain_asn;
    auto own_prefix = [this, domain](const Prefix& p) {
      auto it = domain_prefixes_.find(domain);
      return it != domain_prefixes_.end() && it->second.count(p) > 0;
    };
    rn->igp = std::make_unique<IgpEngine>(cfg, std::move(igp_links), rn.get());
    rn->bgp = std::make_unique<BgpEngine>(cfg, std::move(ext_peers), rn.get(),
                                          own_prefix);
    routers_[cfg.router_id] = std::move(rn);
  }

  metrics_.phases.push_back(PhaseMetrics{0, 0, false, std::nullopt, {}, 0});

  Event startup;
  startup.time = 1;  // state is built at t=0; first protocol activity at 1 ms
  startup.kind = Event::Kind::Startup;
  push_event(std::move(startup));

  for (const ActionSpec& a : scenario_.actions) {
    Event ev;
    ev.time = a.at;
    ev.kind = Event::Kind::Action;
    ev.action = a;
    push_event(std::move(ev));
  }
}

World::~World() = default;

void World::push_event(Event ev) {
  ev.seq = next_seq_++;
  queue_->pq.push(std::move(ev));
}

void World::schedule_dump(RouterId router, SimTime at) {
  if (ran_) throw SimError("schedule_dump after run");
  if (!routers_.count(router))
    throw SimError("UnknownRouter: " + router_name(router));
  Event ev;
  ev.time = at;
  ev.kind = Event::Kind::Dump;
  ev.dump_router = router;
  push_event(std::move(ev));
}

World::RouterNode& World::node(RouterId id) {
  auto it = routers_.find(id);
  if (it == routers_.end()) throw SimError("UnknownRouter: " + router_name(id));
  return *it->second;
}

const World::RouterNode& World::node(RouterId id) const {
  auto it = routers_.find(id);
  if (it == routers_.end()) throw SimError("UnknownRouter: " + router_name(id));
  return *it->second;
}

const IgpEngine& World::igp(RouterId id) const { return *node(id).igp; }
const BgpEngine& World::bgp(RouterId id) const { return *node(id).bgp; }

std::uint64_t World::counter(RouterId id, const std::string& name) const {
  const RouterNode& r = node(id);
  auto it = r.counters.find(name);
  return it == r.counters.end() ? 0 : it->second;
}

std::string World::dump_router(RouterId id) const {
  const RouterNode& r = node(id);
  return dump_tables(r.igp->table_a(), r.bgp->table_b());
}

std::size_t World::link_index(RouterId a, RouterId b) const {
  auto key = std::minmax(a, b);
  auto it = link_ids_.find({key.first, key.second});
  if (it == link_ids_.end())
    throw SimError("UnknownEntity: no link " + router_name(a) + "-" + router_name(b));
  return it->second;
}

void World::run(SimTime until) {
  if (ran_) throw SimError("World::run may be called once");
  ran_ = true;
  while (!queue_->pq.empty() && queue_->pq.top().time <= until) {
    Event ev = queue_->pq.top();
    queue_->pq.pop();
    if (ev.time < now_) throw SimError("causality violation in event queue");
    now_ = ev.time;
    process_event(ev);
    sync_router_flags();
    detect_table_changes();
    check_invariants();
  }
  now_ = until;
  finalize_phase(until);
}

void World::process_event(const Event& ev) {
  switch (ev.kind) {
    case Event::Kind::Startup: handle_startup(); break;
    case Event::Kind::Deliver: handle_deliver(ev); break;
    case Event::Kind::Keepalive: handle_keepalive(ev); break;
    case Event::Kind::Timer: handle_timer(ev); break;
    case Event::Kind::Action: handle_action(ev.action); break;
    case Event::Kind::Dump: handle_dump(ev.dump_router); break;
  }
}

void World::handle_startup() {
  // Inter-domain sessions are link-derived: both ends establish together.
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const LinkSpec& l = links_[i].spec;
    RouterNode& a = node(l.a);
    RouterNode& b = node(l.b);
    if (a.cfg.domain_asn != b.cfg.domain_asn) {
      a.bgp->on_external_link_up(l.b, now_);
      b.bgp->on_external_link_up(l.a, now_);
    }
  }
  for (auto& [id, r] : routers_) r->igp->start(now_);
}

void World::handle_deliver(const Event& ev) {
  const LinkRuntime& link = links_[ev.link];
  if (!link.up || link.epoch != ev.epoch) {
    // Destroyed on the wire by link_down.
    message_gone(*ev.env);
    count_drop(nullptr, "LinkDown");
    if (ev.env->ping_id >= 0)
      finish_ping(ev.env->ping_id, false, ev.env->hops, "LinkDown");
    return;
  }
  message_gone(*ev.env);

  RouterNode& r = node(ev.to);
  if (ev.env->session_dst && *ev.env->session_dst != r.cfg.router_id) {
    relay_bgp(r, ev);
    return;
  }

  BigpHeader h;
  MessageBody body;
  try {
    std::tie(h, body) = decode(ev.env->bytes);
  } catch (const WireError& e) {
    throw SimError(std::string("internal packet failed to decode: ") + e.what());
  }

  auto sel = dispatch(h);
  if (!sel) {
    count_drop(&r, "ModeMismatch");
    return;
  }
  switch (*sel) {
    case EngineSelector::ALGORITHM1:
      if (h.msg_type == MsgType::HELLO)
        r.igp->on_hello(ev.from, h.asn, std::get<Hello>(body), now_);
      else
        r.igp->on_update_a(ev.from, h.asn, std::get<UpdateA>(body), ev.env->tag,
                           now_);
      break;
    case EngineSelector::ALGORITHM2:
      r.bgp->on_update(h.router_id, std::get<UpdateB>(body), now_);
      break;
    case EngineSelector::LOOKUP:
      forward_data(r, h, std::get<Data>(body), ev.env);
      break;
  }
}

void World::handle_keepalive(const Event& ev) {
  const LinkRuntime& link = links_[ev.link];
  if (!link.up || link.epoch != ev.epoch) return;  // probe lost with the link
  node(ev.to).bgp->on_keepalive(ev.from, now_);
}

void World::handle_timer(const Event& ev) {
  RouterNode& r = node(ev.router);
  switch (ev.tkind) {
    case TimerKind::HelloTick:
    case TimerKind::NeighborDead:
    case TimerKind::Refresh:
      r.igp->on_timer(ev.tkind, ev.tkey, now_);
      break;
    case TimerKind::KeepaliveTick:
    case TimerKind::HoldExpiry:
      r.bgp->on_timer(ev.tkind, ev.tkey, now_);
      break;
  }
}

void World::handle_action(const ActionSpec& action) {
  switch (action.kind) {
    case ActionSpec::Kind::LinkDown: {
      begin_phase(now_);
      LinkRuntime& l = links_[link_index(action.x, action.y)];
      l.up = false;  // silent cut: endpoints learn via hello/keepalive loss
      break;
    }
    case ActionSpec::Kind::LinkUp: {
      begin_phase(now_);
      LinkRuntime& l = links_[link_index(action.x, action.y)];
      if (!l.up) {
        l.up = true;
        ++l.epoch;
      }
      RouterNode& a = node(l.spec.a);
      RouterNode& b = node(l.spec.b);
      if (a.cfg.domain_asn == b.cfg.domain_asn) {
        a.igp->on_link_up(l.spec.b, now_);
        b.igp->on_link_up(l.spec.a, now_);
      } else {
        a.bgp->on_external_link_up(l.spec.b, now_);
        b.bgp->on_external_link_up(l.spec.a, now_);
      }
      break;
    }
    case ActionSpec::Kind::Ping:
      originate_ping(node(action.x), action.dest_addr);
      break;
    case ActionSpec::Kind::SetLocalPref:
      node(action.x).bgp->set_peer_local_pref(action.y, action.value, now_);
      break;
  }
}

void World::handle_dump(RouterId router) {
  std::ostringstream os;
  os << "tables " << router_name(router) << " t=" << format_sim_seconds(now_)
     << "\n"
     << dump_router(router);
  dumps_.push_back(os.str());
}

void World::igp_send(RouterNode& r, RouterId to, MsgType type,
                     const MessageBody& body, UpdateTag tag) {
  BigpHeader h = stamp_header(Mode::INTRA, r.cfg, type);
  auto env = std::make_shared<Envelope>();
  env->bytes = encode(h, body);
  env->header = h;
  env->tag = tag;
  if (type == MsgType::HELLO)
    env->summary = hello_summary(std::get<Hello>(body));
  else
    env->summary = update_a_summary(std::get<UpdateA>(body), tag);
  transport(r, to, std::move(env));
}

void World::bgp_send(RouterNode& r, RouterId peer, const UpdateB& body,
                     PeerKind kind) {
  BigpHeader h = stamp_header(Mode::INTER, r.cfg, MsgType::UPDATE_B);
  auto env = std::make_shared<Envelope>();
  env->bytes = encode(h, MessageBody{body});
  env->header = h;
  env->session_dst = peer;
  env->session_kind = kind;
  env->summary = update_b_summary(peer, kind, body);
  RouterId next = peer;
  if (kind == PeerKind::INTERNAL) {
    // Internal sessions ride the intra SPF tree.
    const auto& paths = r.igp->node_paths();
    auto it = paths.find(peer);
    if (it == paths.end()) {
      count_drop(&r, "NoRouteToPeer");
      return;
    }
    next = it->second.first;
  }
  transport(r, next, std::move(env));
}

void World::keepalive_send(RouterNode& r, RouterId peer) {
  auto it = r.link_to_peer.find(peer);
  if (it == r.link_to_peer.end()) return;
  const LinkRuntime& l = links_[it->second];
  if (!l.up) return;  // probe silently lost; hold timer will notice
  Event ev;
  ev.time = now_ + l.spec.delay;
  ev.kind = Event::Kind::Keepalive;
  ev.link = it->second;
  ev.from = r.cfg.router_id;
  ev.to = peer;
  ev.epoch = l.epoch;
  push_event(std::move(ev));
}

void World::trace_message(RouterId from, RouterId to, const Envelope& env) {
  const BigpHeader& h = env.header;
  std::ostringstream os;
  os << "t=" << now_ << ' ' << router_name(from) << "->" << router_name(to) << ' '
     << to_string(h.msg_type) << " asn=" << h.asn << " cbi=" << (h.cbi ? 1 : 0)
     << " cbb=" << (h.cbb ? 1 : 0) << ' ' << env.summary << '\n';
  trace_ += os.str();
  metrics_.msg_counts[h.msg_type]++;
  metrics_.per_router[from][h.msg_type]++;
  metrics_.phases.back().msg_counts[h.msg_type]++;
}

void World::transport(RouterNode& from, RouterId to, std::shared_ptr<Envelope> env) {
  // Care-bit law holds for every packet that enters the wire.
  const BigpHeader& h = env->header;
  if (h.asn == 0 || (h.cbi != (classify_mode(h.asn, scenario_.topology.asn_split) ==
                               Mode::INTRA)))
    throw SimError("care bit does not match ASN range on emitted packet");

  trace_message(from.cfg.router_id, to, *env);
  if (is_blocking(h, env->tag)) {
    ++blocking_in_flight_;
    disturb(now_);
  }

  auto it = from.link_to_peer.find(to);
  if (it == from.link_to_peer.end())
    throw SimError("send to non-adjacent router " + router_name(to));
  const LinkRuntime& l = links_[it->second];
  if (!l.up) {
    // The sender does not know yet; the packet dies at the cut.
    message_gone(*env);
    count_drop(nullptr, "LinkDown");
    if (env->ping_id >= 0) finish_ping(env->ping_id, false, env->hops, "LinkDown");
    return;
  }
  Event ev;
  ev.time = now_ + l.spec.delay;
  ev.kind = Event::Kind::Deliver;
  ev.link = it->second;
  ev.from = from.cfg.router_id;
  ev.to = to;
  ev.epoch = l.epoch;
  ev.env = std::move(env);
  push_event(std::move(ev));
}

void World::message_gone(const Envelope& env) {
  if (is_blocking(env.header, env.tag)) {
    --blocking_in_flight_;
    disturb(now_);
  }
}

void World::relay_bgp(RouterNode& r, const Event& ev) {
  auto env = std::make_shared<Envelope>(*ev.env);
  if (++env->relay_hops > 32) {
    count_drop(&r, "RelayHopLimit");
    return;
  }
  const auto& paths = r.igp->node_paths();
  auto it = paths.find(*env->session_dst);
  if (it == paths.end()) {
    count_drop(&r, "NoRouteToPeer");
    return;
  }
  transport(r, it->second.first, std::move(env));
}

void World::forward_data(RouterNode& r, const BigpHeader& header, Data data,
                         std::shared_ptr<Envelope> env) {
  std::set<RouterId> full = r.igp->full_neighbors();
  std::set<RouterId> peers = r.bgp->established_peers();
  ForwardingContext ctx;
  ctx.cfg = &r.cfg;
  ctx.table_a = &r.igp->table_a();
  ctx.table_b = &r.bgp->table_b();
  ctx.node_first_hop = &r.igp->node_paths();
  ctx.full_neighbors = &full;
  ctx.established_peers = &peers;

  ForwardingDecision dec = lookup(header, data.dest_addr, ctx);
  switch (dec.action) {
    case ForwardingDecision::Action::DELIVER_LOCAL:
      if (env->ping_id >= 0) finish_ping(env->ping_id, true, env->hops, "");
      return;
    case ForwardingDecision::Action::DROP:
      count_drop(&r, to_string(dec.reason));
      if (env->ping_id >= 0)
        finish_ping(env->ping_id, false, env->hops, to_string(dec.reason));
      return;
    case ForwardingDecision::Action::FORWARD:
      break;
  }

  if (!full.count(dec.next_hop) && !peers.count(dec.next_hop))
    throw SimError("forwarding to a non-live adjacency");

  if (data.hop_count >= 32) {
    count_drop(&r, to_string(DropReason::TtlExceeded));
    if (env->ping_id >= 0)
      finish_ping(env->ping_id, false, env->hops, to_string(DropReason::TtlExceeded));
    return;
  }
  ++data.hop_count;

  if (dec.restamped) {
    if (env->restamped)
      throw SimError("DATA packet restamped INTER->INTRA twice");
    env->restamped = true;
  }
  env->header = dec.header;
  env->bytes = encode(dec.header, MessageBody{data});
  env->summary = data_summary(data, env->ping_id);
  env->hops.push_back(dec.next_hop);
  transport(r, dec.next_hop, std::move(env));
}

void World::originate_ping(RouterNode& r, std::uint32_t dest) {
  int ping_id = static_cast<int>(metrics_.pings.size());
  PingRecord rec;
  rec.t = now_;
  rec.src = r.cfg.router_id;
  rec.dest = dest;
  metrics_.pings.push_back(rec);

  // The source stamps by destination locality: a local or intra-specific
  // match is intra traffic, anything else leaves the domain.
  bool intra = false;
  for (const Prefix& p : r.cfg.prefixes)
    if (p.contains(dest)) intra = true;
  if (!intra)
    for (const TableAEntry& e : r.igp->table_a())
      if (e.origin == RouteOrigin::INTRA && e.prefix.contains(dest)) intra = true;

  BigpHeader h = stamp_header(intra ? Mode::INTRA : Mode::INTER, r.cfg, MsgType::DATA);
  Data d;
  d.dest_addr = dest;
  d.hop_count = 0;
  d.payload_tag = static_cast<std::uint32_t>(ping_id);

  auto env = std::make_shared<Envelope>();
  env->header = h;
  env->ping_id = ping_id;
  env->hops = {r.cfg.router_id};
  env->summary = data_summary(d, ping_id);
  forward_data(r, h, d, std::move(env));
}

void World::finish_ping(int ping_id, bool delivered,
                        const std::vector<RouterId>& hops,
                        const std::string& reason) {
  PingRecord& rec = metrics_.pings.at(static_cast<std::size_t>(ping_id));
  rec.delivered = delivered;
  rec.hops = hops;
  rec.drop_reason = reason;
}

void World::count_drop(RouterNode* r, const std::string& reason) {
  if (r) r->counters[reason]++;
  metrics_.drops[reason]++;
  metrics_.phases.back().drops++;
}

void World::sync_router_flags() {
  for (auto& [id, r] : routers_) r->igp->set_asbr(r->bgp->is_asbr(), now_);

  // Internal sessions pair up when both ASBRs see each other as reachable
  // ASBRs in their LSDBs; the pairwise view keeps both ends in step.
  for (auto& [id, r] : routers_) {
    std::set<RouterId> qualified;
    if (r->bgp->is_asbr()) {
      for (auto& [oid, other] : routers_) {
        if (oid == id || other->cfg.domain_asn != r->cfg.domain_asn) continue;
        auto mine = r->igp->lsdb().by_origin.find(oid);
        auto theirs = other->igp->lsdb().by_origin.find(id);
        bool i_see = mine != r->igp->lsdb().by_origin.end() &&
                     mine->second.is_asbr && r->igp->node_paths().count(oid);
        bool they_see = theirs != other->igp->lsdb().by_origin.end() &&
                        theirs->second.is_asbr &&
                        other->igp->node_paths().count(id) && other->bgp->is_asbr();
        if (i_see && they_see) qualified.insert(oid);
      }
    }
    r->bgp->update_internal_mesh(qualified, now_);
  }
}

void World::detect_table_changes() {
  for (auto& [id, r] : routers_) {
    std::string d = dump_tables(r->igp->table_a(), r->bgp->table_b());
    auto it = table_cache_.find(id);
    if (it == table_cache_.end() || it->second != d) {
      table_cache_[id] = std::move(d);
      disturb(now_);
    }
  }
}

void World::check_invariants() const {
  for (const auto& [id, r] : routers_) {
    const std::set<Prefix>& own = domain_prefixes_.at(r->cfg.domain_asn);
    int defaults = 0;
    for (const TableAEntry& e : r->igp->table_a()) {
      if (e.origin == RouteOrigin::ASBR_DEFAULT) {
        ++defaults;
        if (!e.prefix.is_default())
          throw SimError("ASBR_DEFAULT entry must be 0.0.0.0/0");
      } else if (!own.count(e.prefix)) {
        throw SimError(router_name(id) +
                       ": Table A holds a prefix from outside its domain");
      }
    }
    if (defaults > 1) throw SimError("more than one default entry");

    std::map<Prefix, int> installed;
    for (const TableBEntry& e : r->bgp->table_b()) {
      if (own.count(e.prefix))
        throw SimError(router_name(id) + ": Table B holds an intra-domain prefix");
      std::set<Asn> seen;
      for (Asn a : e.as_path)
        if (!seen.insert(a).second)
          throw SimError(router_name(id) + ": duplicate ASN in installed as_path");
      if (e.installed) installed[e.prefix]++;
    }
    for (const auto& [p, n] : installed)
      if (n != 1) throw SimError("prefix without exactly one installed best");
    if (r->cfg.stub && !r->bgp->table_b().empty())
      throw SimError(router_name(id) + ": stub router holds Table B entries");
  }
}

void World::disturb(SimTime t) {
  if (t > last_disturbance_) last_disturbance_ = t;
}

void World::begin_phase(SimTime t) {
  finalize_phase(t);
  PhaseMetrics next;
  next.index = metrics_.phases.back().index + 1;
  next.start = t;
  metrics_.phases.push_back(next);
  phase_start_ = t;
  last_disturbance_ = t;
}

// The convergence instant of a phase is its stability onset: the last
// disturbance (table change or non-periodic message in flight), confirmed by
// at least quiet_window of trailing quiet. A phase whose tail is shorter than
// quiet_window, or that still has messages in flight, is NotConverged.
void World::finalize_phase(SimTime end) {
  PhaseMetrics& p = metrics_.phases.back();
  if (blocking_in_flight_ == 0 &&
      end - last_disturbance_ >= scenario_.topology.quiet_window) {
    p.converged = true;
    p.convergence_ms = std::max<SimTime>(0, last_disturbance_ - phase_start_);
  } else {
    p.converged = false;
    p.convergence_ms = std::nullopt;
  }
}

RunOutputs run_scenario(const Scenario& scenario, std::optional<SimTime> until,
                        std::uint64_t seed,
                        const std::vector<DumpRequest>& dump_requests) {
  World w(scenario, seed);
  for (const DumpRequest& d : dump_requests) w.schedule_dump(d.router, d.at);
  w.run(until.value_or(scenario.run_until));
  return RunOutputs{w.metrics(), w.trace(), w.dumps()};
}

}  // namespace bigp
