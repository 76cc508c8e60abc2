#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigp/types.hpp"
#include "bigp/wire_format.hpp"

namespace bigp {

constexpr Asn kDefaultAsnSplit = 32768;

enum class Mode { INTRA, INTER };

const char* to_string(Mode m);

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RouterConfig {
  RouterId router_id = 0;
  Asn domain_asn = 0;
  Asn asn_split = kDefaultAsnSplit;
  std::vector<Prefix> prefixes;
  bool stub = false;
  int hello_interval_s = 10;
  int dead_interval_s = 40;
  int refresh_interval_s = 30;
  std::uint8_t priority = 1;

  /// High-range stamp for inter-domain traffic originated by this domain.
  /// Receivers recover the origin domain as asn - asn_split.
  Asn high_asn() const { return domain_asn + asn_split; }

  void validate() const;  // throws ConfigError
};

enum class RouteOrigin { INTRA, ASBR_DEFAULT };

const char* to_string(RouteOrigin o);

struct TableAEntry {
  Prefix prefix;
  std::optional<RouterId> next_hop;  // nullopt == SELF
  std::uint32_t cost = 0;
  RouteOrigin origin = RouteOrigin::INTRA;
  std::optional<RouterId> via_asbr;

  bool operator==(const TableAEntry&) const = default;
};

struct TableBEntry {
  Prefix prefix;
  std::vector<Asn> as_path;
  RouterId next_hop_peer = 0;
  std::uint32_t local_pref = 100;
  bool learned_internal = false;
  bool installed = false;

  bool operator==(const TableBEntry&) const = default;
};

using TableA = std::vector<TableAEntry>;
using TableB = std::vector<TableBEntry>;

enum class DropReason {
  NoIntraRoute,
  NoInterRoute,
  TtlExceeded,
  ModeMismatch,
  LinkDown,
};

const char* to_string(DropReason r);

struct ForwardingDecision {
  enum class Action { FORWARD, DELIVER_LOCAL, DROP };

  Action action = Action::DROP;
  RouterId next_hop = 0;      // FORWARD
  BigpHeader header;          // FORWARD: outgoing header (possibly restamped)
  bool restamped = false;     // FORWARD: header switched INTER -> INTRA here
  DropReason reason = DropReason::NoIntraRoute;  // DROP
};

/// Everything lookup() may consult. node_first_hop covers same-domain routers
/// (from the SPF tree) and resolves routes whose next hop is an internal peer.
struct ForwardingContext {
  const RouterConfig* cfg = nullptr;
  const TableA* table_a = nullptr;
  const TableB* table_b = nullptr;
  const std::map<RouterId, std::pair<RouterId, std::uint32_t>>* node_first_hop =
      nullptr;
  const std::set<RouterId>* full_neighbors = nullptr;
  const std::set<RouterId>* established_peers = nullptr;
};

/// INTRA if asn < asn_split, INTER otherwise. Throws RoutingError for the
/// reserved asn 0.
Mode classify_mode(Asn asn, Asn asn_split);

BigpHeader stamp_header(Mode dest_locality, const RouterConfig& cfg, MsgType type);

/// Forwarding decision for a packet addressed to dest_addr. Never throws.
ForwardingDecision lookup(const BigpHeader& header, std::uint32_t dest_addr,
                          const ForwardingContext& ctx);

enum class EngineSelector { ALGORITHM1, ALGORITHM2, LOOKUP };

/// Maps a decoded packet to the engine that must process it. nullopt means a
/// care-bit/msg-type mismatch (drop and count as ModeMismatch).
std::optional<EngineSelector> dispatch(const BigpHeader& header);

/// Normative dump format, one line per entry, sorted by prefix then table:
///   A <prefix>/<len> via <next_hop> cost <c> origin <INTRA|ASBR_DEFAULT>
///   B <prefix>/<len> via <peer> as_path <a1,a2,...> lp <n> best <0|1>
std::string dump_tables(const TableA& a, const TableB& b);

}  // namespace bigp
