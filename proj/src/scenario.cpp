#include "bigp/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace bigp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw ScenarioError(ScenarioError::Kind::Parse, line,
                      "line " + std::to_string(line) + ": " + why);
}

[[noreturn]] void validation_fail(int line, const std::string& why) {
  throw ScenarioError(ScenarioError::Kind::Validation, line,
                      "line " + std::to_string(line) + ": " + why);
}

std::uint64_t parse_uint(const std::string& s, int line, const char* what) {
  if (s.empty()) parse_fail(line, std::string("expected number for ") + what);
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      parse_fail(line, std::string("bad number for ") + what + ": " + s);
    v = v * 10 + (c - '0');
    if (v > 0xFFFFFFFFull)
      parse_fail(line, std::string("number out of range for ") + what);
  }
  return v;
}

/// Decimal seconds with at most millisecond precision.
SimTime parse_time(const std::string& s, int line) {
  auto dot = s.find('.');
  std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) parse_fail(line, "bad time: " + s);
  if (frac.size() > 3)
    parse_fail(line, "time has sub-millisecond precision: " + s);
  std::uint64_t secs = whole.empty() ? 0 : parse_uint(whole, line, "time");
  while (frac.size() < 3) frac += '0';
  std::uint64_t ms = frac.empty() ? 0 : parse_uint(frac, line, "time fraction");
  if (secs > 9'000'000'000ull) parse_fail(line, "time out of range");
  return static_cast<SimTime>(secs) * kMsPerSec + static_cast<SimTime>(ms);
}

RouterId parse_router(const std::string& s, int line) {
  auto id = parse_router_name(s);
  if (!id) parse_fail(line, "expected router name R<id>, got: " + s);
  return *id;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  Scenario sc;
  std::map<std::string, std::string> raw_params;
  struct PendingAction {
    ActionSpec spec;
    int line;
  };
  std::vector<PendingAction> pending;
  std::vector<int> node_lines, link_lines;
  bool saw_run_until = false;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (kw == "param") {
      if (tok.size() != 3) parse_fail(lineno, "param expects: param <name> <value>");
      raw_params[tok[1]] = tok[2];
    } else if (kw == "node") {
      if (tok.size() < 4 || tok[2] != "asn")
        parse_fail(lineno, "node expects: node R<id> asn <n> [prefix A/L]...");
      RouterConfig cfg;
      cfg.router_id = parse_router(tok[1], lineno);
      cfg.domain_asn = static_cast<Asn>(parse_uint(tok[3], lineno, "asn"));
      std::size_t i = 4;
      while (i < tok.size()) {
        const std::string& opt = tok[i];
        if (opt == "prefix") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "prefix expects a value");
          auto p = parse_prefix(tok[i + 1]);
          if (!p) parse_fail(lineno, "bad prefix: " + tok[i + 1]);
          cfg.prefixes.push_back(*p);
          i += 2;
        } else if (opt == "stub") {
          cfg.stub = true;
          i += 1;
        } else if (opt == "priority") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "priority expects a value");
          std::uint64_t v = parse_uint(tok[i + 1], lineno, "priority");
          if (v > 255) parse_fail(lineno, "priority out of range 0-255");
          cfg.priority = static_cast<std::uint8_t>(v);
          i += 2;
        } else if (opt == "refresh") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "refresh expects a value");
          cfg.refresh_interval_s =
              static_cast<int>(parse_uint(tok[i + 1], lineno, "refresh"));
          i += 2;
        } else if (opt == "hello") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "hello expects a value");
          cfg.hello_interval_s =
              static_cast<int>(parse_uint(tok[i + 1], lineno, "hello"));
          i += 2;
        } else if (opt == "dead") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "dead expects a value");
          cfg.dead_interval_s =
              static_cast<int>(parse_uint(tok[i + 1], lineno, "dead"));
          i += 2;
        } else {
          parse_fail(lineno, "unknown node option: " + opt);
        }
      }
      sc.topology.nodes.push_back(cfg);
      node_lines.push_back(lineno);
    } else if (kw == "link") {
      if (tok.size() < 3) parse_fail(lineno, "link expects: link Ra Rb ...");
      LinkSpec l;
      l.a = parse_router(tok[1], lineno);
      l.b = parse_router(tok[2], lineno);
      std::size_t i = 3;
      while (i < tok.size()) {
        const std::string& opt = tok[i];
        if (opt == "cost") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "cost expects a value");
          l.cost = static_cast<std::uint32_t>(parse_uint(tok[i + 1], lineno, "cost"));
          i += 2;
        } else if (opt == "delay_ms") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "delay_ms expects a value");
          l.delay = static_cast<SimTime>(parse_uint(tok[i + 1], lineno, "delay_ms"));
          i += 2;
        } else if (opt == "segment") {
          if (i + 1 >= tok.size()) parse_fail(lineno, "segment expects a value");
          l.segment = tok[i + 1];
          i += 2;
        } else {
          parse_fail(lineno, "unknown link option: " + opt);
        }
      }
      sc.topology.links.push_back(l);
      link_lines.push_back(lineno);
    } else if (kw == "at") {
      if (tok.size() < 3) parse_fail(lineno, "at expects: at <t> <action> ...");
      ActionSpec a;
      a.at = parse_time(tok[1], lineno);
      const std::string& act = tok[2];
      if (act == "link_down" || act == "link_up") {
        if (tok.size() != 5) parse_fail(lineno, act + " expects two routers");
        a.kind = act == "link_down" ? ActionSpec::Kind::LinkDown
                                    : ActionSpec::Kind::LinkUp;
        a.x = parse_router(tok[3], lineno);
        a.y = parse_router(tok[4], lineno);
      } else if (act == "ping") {
        if (tok.size() != 5) parse_fail(lineno, "ping expects: ping R<id> <addr>");
        a.kind = ActionSpec::Kind::Ping;
        a.x = parse_router(tok[3], lineno);
        auto addr = parse_addr(tok[4]);
        if (!addr) parse_fail(lineno, "bad address: " + tok[4]);
        a.dest_addr = *addr;
      } else if (act == "set_local_pref") {
        if (tok.size() != 6)
          parse_fail(lineno, "set_local_pref expects: set_local_pref R<r> R<peer> <lp>");
        a.kind = ActionSpec::Kind::SetLocalPref;
        a.x = parse_router(tok[3], lineno);
        a.y = parse_router(tok[4], lineno);
        a.value = static_cast<std::uint32_t>(parse_uint(tok[5], lineno, "local_pref"));
      } else {
        parse_fail(lineno, "unknown action: " + act);
      }
      pending.push_back({a, lineno});
    } else if (kw == "run_until") {
      if (tok.size() != 2) parse_fail(lineno, "run_until expects one time value");
      sc.run_until = parse_time(tok[1], lineno);
      saw_run_until = true;
    } else {
      parse_fail(lineno, "unknown directive: " + kw);
    }
  }

  if (!saw_run_until) sc.run_until = 0;

  // Params.
  sc.topology.params = raw_params;
  if (auto it = raw_params.find("asn_split"); it != raw_params.end()) {
    std::uint64_t v = parse_uint(it->second, 0, "asn_split");
    if (v < 2 || v > 0x80000000ull)
      validation_fail(0, "param asn_split out of range [2, 2^31]");
    sc.topology.asn_split = static_cast<Asn>(v);
  }
  if (auto it = raw_params.find("quiet_window"); it != raw_params.end())
    sc.topology.quiet_window = parse_time(it->second, 0);

  // Node validation.
  std::set<RouterId> ids;
  std::map<RouterId, Asn> domain_of;
  for (std::size_t i = 0; i < sc.topology.nodes.size(); ++i) {
    RouterConfig& cfg = sc.topology.nodes[i];
    cfg.asn_split = sc.topology.asn_split;
    if (!ids.insert(cfg.router_id).second)
      validation_fail(node_lines[i],
                      "duplicate router id " + router_name(cfg.router_id));
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      validation_fail(node_lines[i], e.what());
    }
    domain_of[cfg.router_id] = cfg.domain_asn;
  }

  // Link validation.
  std::set<std::pair<RouterId, RouterId>> seen_links;
  for (std::size_t i = 0; i < sc.topology.links.size(); ++i) {
    const LinkSpec& l = sc.topology.links[i];
    if (!ids.count(l.a) || !ids.count(l.b))
      validation_fail(link_lines[i], "link endpoint does not exist");
    if (l.a == l.b) validation_fail(link_lines[i], "link endpoints must differ");
    if (l.delay <= 0) validation_fail(link_lines[i], "link delay must be > 0");
    if (l.cost < 1) validation_fail(link_lines[i], "link cost must be >= 1");
    auto key = std::minmax(l.a, l.b);
    if (!seen_links.insert({key.first, key.second}).second)
      validation_fail(link_lines[i], "duplicate link");
  }

  // Stub routers hold intra routes plus the default only; an inter-domain
  // link on one would blackhole.
  for (std::size_t i = 0; i < sc.topology.nodes.size(); ++i) {
    const RouterConfig& cfg = sc.topology.nodes[i];
    if (!cfg.stub) continue;
    for (const LinkSpec& l : sc.topology.links) {
      RouterId other = l.a == cfg.router_id ? l.b : l.a;
      if ((l.a == cfg.router_id || l.b == cfg.router_id) &&
          domain_of[other] != cfg.domain_asn)
        validation_fail(node_lines[i],
                        router_name(cfg.router_id) +
                            ": stub router cannot have an inter-domain link");
    }
  }

  // Action validation.
  for (const PendingAction& p : pending) {
    const ActionSpec& a = p.spec;
    if (!ids.count(a.x))
      validation_fail(p.line, "UnknownEntity: " + router_name(a.x));
    if (a.kind == ActionSpec::Kind::LinkDown || a.kind == ActionSpec::Kind::LinkUp) {
      auto key = std::minmax(a.x, a.y);
      if (!seen_links.count({key.first, key.second}))
        validation_fail(p.line, "UnknownEntity: no link " + router_name(a.x) + "-" +
                                    router_name(a.y));
    }
    if (a.kind == ActionSpec::Kind::SetLocalPref && !ids.count(a.y))
      validation_fail(p.line, "UnknownEntity: " + router_name(a.y));
    sc.actions.push_back(a);
  }

  return sc;
}

}  // namespace bigp
