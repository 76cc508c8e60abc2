#include "bigp/router_core.hpp"

#include <algorithm>
#include <sstream>

namespace bigp {

const char* to_string(Mode m) { return m == Mode::INTRA ? "INTRA" : "INTER"; }

const char* to_string(RouteOrigin o) {
  return o == RouteOrigin::INTRA ? "INTRA" : "ASBR_DEFAULT";
}

const char* to_string(DropReason r) {
  switch (r) {
    case DropReason::NoIntraRoute: return "NoIntraRoute";
    case DropReason::NoInterRoute: return "NoInterRoute";
    case DropReason::TtlExceeded: return "TtlExceeded";
    case DropReason::ModeMismatch: return "ModeMismatch";
    case DropReason::LinkDown: return "LinkDown";
  }
  return "?";
}

void RouterConfig::validate() const {
  if (router_id == 0) throw ConfigError("router_id must be nonzero");
  if (asn_split < 2 || asn_split > 0x80000000u)
    throw ConfigError("asn_split out of range");
  if (domain_asn < 1 || domain_asn >= asn_split)
    throw ConfigError(router_name(router_id) +
                      ": domain asn must satisfy 1 <= asn < asn_split");
  if (hello_interval_s < 1) throw ConfigError("hello interval must be >= 1");
  if (dead_interval_s < 2 * hello_interval_s)
    throw ConfigError(router_name(router_id) +
                      ": dead interval must be >= 2 x hello interval");
  if (refresh_interval_s < 30 || refresh_interval_s > 60)
    throw ConfigError(router_name(router_id) +
                      ": refresh interval must be within [30,60]");
  for (const Prefix& p : prefixes)
    if (p.len > 32) throw ConfigError("prefix length > 32");
}

Mode classify_mode(Asn asn, Asn asn_split) {
  if (asn == 0) throw RoutingError("ReservedAsn: asn 0 is reserved");
  return asn < asn_split ? Mode::INTRA : Mode::INTER;
}

BigpHeader stamp_header(Mode dest_locality, const RouterConfig& cfg, MsgType type) {
  BigpHeader h;
  h.version = 1;
  h.msg_type = type;
  h.router_id = cfg.router_id;
  if (dest_locality == Mode::INTRA) {
    h.cbi = true;
    h.cbb = false;
    h.asn = cfg.domain_asn;
  } else {
    h.cbi = false;
    h.cbb = true;
    h.asn = cfg.high_asn();
  }
  return h;
}

namespace {

bool prefers(const TableAEntry& a, const TableAEntry& b) {
  if (a.prefix.len != b.prefix.len) return a.prefix.len > b.prefix.len;
  // Same length can only tie on distinct tables built wrong; break by next hop.
  RouterId na = a.next_hop.value_or(0), nb = b.next_hop.value_or(0);
  return na < nb;
}

const TableAEntry* lpm_a(const TableA& table, std::uint32_t dest, bool intra_only) {
  const TableAEntry* best = nullptr;
  for (const TableAEntry& e : table) {
    if (intra_only && e.origin != RouteOrigin::INTRA) continue;
    if (!e.prefix.contains(dest)) continue;
    if (!best || prefers(e, *best)) best = &e;
  }
  return best;
}

const TableBEntry* lpm_b(const TableB& table, std::uint32_t dest) {
  const TableBEntry* best = nullptr;
  for (const TableBEntry& e : table) {
    if (!e.installed || !e.prefix.contains(dest)) continue;
    if (!best || e.prefix.len > best->prefix.len ||
        (e.prefix.len == best->prefix.len && e.next_hop_peer < best->next_hop_peer))
      best = &e;
  }
  return best;
}

}  // namespace

ForwardingDecision lookup(const BigpHeader& header, std::uint32_t dest_addr,
                          const ForwardingContext& ctx) {
  ForwardingDecision dec;
  for (const Prefix& p : ctx.cfg->prefixes) {
    if (p.contains(dest_addr)) {
      dec.action = ForwardingDecision::Action::DELIVER_LOCAL;
      return dec;
    }
  }

  if (header.cbi) {
    const TableAEntry* e = lpm_a(*ctx.table_a, dest_addr, /*intra_only=*/false);
    if (!e) {
      dec.reason = DropReason::NoIntraRoute;
      return dec;
    }
    if (!e->next_hop) {
      dec.action = ForwardingDecision::Action::DELIVER_LOCAL;
      return dec;
    }
    dec.action = ForwardingDecision::Action::FORWARD;
    dec.next_hop = *e->next_hop;
    dec.header = header;
    return dec;
  }

  // CBB: a hit on an intra-origin entry means the packet has reached its
  // destination domain at this border router; hand off to intra mode.
  if (const TableAEntry* e = lpm_a(*ctx.table_a, dest_addr, /*intra_only=*/true)) {
    if (!e->next_hop) {
      dec.action = ForwardingDecision::Action::DELIVER_LOCAL;
      return dec;
    }
    BigpHeader restamped = stamp_header(Mode::INTRA, *ctx.cfg, header.msg_type);
    restamped.router_id = header.router_id;  // originator is preserved
    dec.action = ForwardingDecision::Action::FORWARD;
    dec.next_hop = *e->next_hop;
    dec.header = restamped;
    dec.restamped = true;
    return dec;
  }

  if (const TableBEntry* e = lpm_b(*ctx.table_b, dest_addr)) {
    RouterId nh = e->next_hop_peer;
    if (e->learned_internal) {
      // Route via an internal peer rides the intra SPF tree toward it.
      auto it = ctx.node_first_hop->find(e->next_hop_peer);
      if (it == ctx.node_first_hop->end()) {
        dec.reason = DropReason::NoInterRoute;
        return dec;
      }
      nh = it->second.first;
    }
    dec.action = ForwardingDecision::Action::FORWARD;
    dec.next_hop = nh;
    dec.header = header;
    return dec;
  }

  // Interior routers carry inter-domain traffic toward the nearest ASBR via
  // the default entry, without restamping.
  if (const TableAEntry* d = lpm_a(*ctx.table_a, dest_addr, /*intra_only=*/false);
      d && d->origin == RouteOrigin::ASBR_DEFAULT && d->next_hop) {
    dec.action = ForwardingDecision::Action::FORWARD;
    dec.next_hop = *d->next_hop;
    dec.header = header;
    return dec;
  }

  dec.reason = DropReason::NoInterRoute;
  return dec;
}

std::optional<EngineSelector> dispatch(const BigpHeader& header) {
  switch (header.msg_type) {
    case MsgType::HELLO:
    case MsgType::UPDATE_A:
      if (!header.cbi) return std::nullopt;
      return EngineSelector::ALGORITHM1;
    case MsgType::UPDATE_B:
      if (!header.cbb) return std::nullopt;
      return EngineSelector::ALGORITHM2;
    case MsgType::DATA:
      return EngineSelector::LOOKUP;
  }
  return std::nullopt;
}

std::string dump_tables(const TableA& a, const TableB& b) {
  struct Line {
    Prefix prefix;
    char table;
    RouterId via;
    std::string text;
  };
  std::vector<Line> lines;
  for (const TableAEntry& e : a) {
    std::ostringstream os;
    os << "A " << e.prefix.str() << " via "
       << (e.next_hop ? router_name(*e.next_hop) : std::string("SELF"))
       << " cost " << e.cost << " origin " << to_string(e.origin);
    lines.push_back({e.prefix, 'A', e.next_hop.value_or(0), os.str()});
  }
  for (const TableBEntry& e : b) {
    std::ostringstream os;
    os << "B " << e.prefix.str() << " via " << router_name(e.next_hop_peer)
       << " as_path ";
    for (std::size_t i = 0; i < e.as_path.size(); ++i) {
      if (i) os << ',';
      os << e.as_path[i];
    }
    os << " lp " << e.local_pref << " best " << (e.installed ? 1 : 0);
    lines.push_back({e.prefix, 'B', e.next_hop_peer, os.str()});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    if (x.prefix != y.prefix) return x.prefix < y.prefix;
    if (x.table != y.table) return x.table < y.table;
    return x.via < y.via;
  });
  std::string out;
  for (const Line& l : lines) {
    out += l.text;
    out += '\n';
  }
  return out;
}

}  // namespace bigp
