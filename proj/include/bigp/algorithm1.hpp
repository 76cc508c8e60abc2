#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bigp/engine_io.hpp"
#include "bigp/router_core.hpp"
#include "bigp/types.hpp"
#include "bigp/wire_format.hpp"

namespace bigp {

enum class NeighborPhase { DOWN, INIT, FULL };

const char* to_string(NeighborPhase p);

struct NeighborState {
  RouterId neighbor_id = 0;
  NeighborPhase state = NeighborPhase::DOWN;
  SimTime last_hello_at = 0;
  std::uint8_t priority = 0;  // learned from hellos
};

struct Lsdb {
  std::map<RouterId, Lsa> by_origin;

  /// Keeps only the highest seq per origin. Returns true when stored.
  bool store_if_newer(const Lsa& lsa);

  /// Wire-encoded, origin-sorted serialization; equal databases compare
  /// byte-equal.
  std::vector<std::uint8_t> canonical_bytes() const;
};

struct DrResult {
  std::optional<RouterId> dr;
  std::optional<RouterId> bdr;
};

/// DR = highest priority, ties by highest router id; BDR = runner-up by the
/// same order. Priority 0 routers are ineligible; no eligible member leaves
/// both unset (the segment floods without a DR).
DrResult elect_dr_bdr(const std::vector<std::pair<RouterId, std::uint8_t>>& members);

struct SpfResult {
  /// Reachable routers (excluding self): first hop and total cost.
  std::map<RouterId, std::pair<RouterId, std::uint32_t>> node_paths;
  /// Intra entries: own prefixes at cost 0 plus each reachable origin's
  /// prefixes. No default entry; see derive_default_routes.
  TableA entries;
};

/// Dijkstra over the symmetric-link subset of the LSDB (a link counts only if
/// both endpoints advertise it). Equal-cost ties break toward the lower
/// first-hop router id.
SpfResult run_spf(const Lsdb& lsdb, RouterId self, const RouterConfig& cfg);

/// ASBR_DEFAULT entry toward the nearest reachable ASBR (ties by lower ASBR
/// id), or nullopt when self is an ASBR or none is reachable.
std::optional<TableAEntry> derive_default_routes(const Lsdb& lsdb, RouterId self,
                                                 const SpfResult& spf,
                                                 bool self_is_asbr);

struct IgpLinkInfo {
  RouterId peer = 0;
  std::uint32_t cost = 10;
  bool same_domain = true;
  std::optional<std::string> segment;
};

/// Algorithm1: hello-driven neighbor machine, LSA origination/flooding,
/// SPF into Table A, periodic refresh. One instance per router; handlers are
/// run-to-completion on the simulator timeline.
class IgpEngine {
 public:
  IgpEngine(RouterConfig cfg, std::vector<IgpLinkInfo> links, EngineHost* host);

  void start(SimTime now);

  void on_hello(RouterId from, Asn stamped_asn, const Hello& hello, SimTime now);
  void on_update_a(RouterId from, Asn stamped_asn, const UpdateA& update,
                   UpdateTag tag, SimTime now);
  void on_timer(TimerKind kind, RouterId key, SimTime now);
  void on_link_up(RouterId peer, SimTime now);

  /// Border status feed from the inter-domain side; flips re-originate the
  /// router's LSA.
  void set_asbr(bool asbr, SimTime now);

  const RouterConfig& config() const { return cfg_; }
  const Lsdb& lsdb() const { return lsdb_; }
  const TableA& table_a() const { return table_a_; }
  const std::map<RouterId, std::pair<RouterId, std::uint32_t>>& node_paths() const {
    return node_paths_;
  }
  const std::map<RouterId, NeighborState>& neighbors() const { return neighbors_; }
  std::set<RouterId> full_neighbors() const;
  const std::map<std::string, DrResult>& segment_roles() const {
    return segment_roles_;
  }
  bool is_asbr_flag() const { return is_asbr_; }

 private:
  void originate(UpdateTag tag, SimTime now);
  void flood(const std::vector<Lsa>& lsas, std::optional<RouterId> except,
             UpdateTag tag);
  void send_hello(RouterId to);
  void teardown(NeighborState& nb, SimTime now);
  void recompute(SimTime now);
  void recompute_elections();
  bool has_intra_link() const;

  RouterConfig cfg_;
  std::vector<IgpLinkInfo> links_;
  EngineHost* host_;
  std::map<RouterId, NeighborState> neighbors_;  // intra peers only
  std::map<RouterId, IgpLinkInfo> link_by_peer_;
  Lsdb lsdb_;
  std::uint32_t own_seq_ = 0;
  bool is_asbr_ = false;
  TableA table_a_;
  std::map<RouterId, std::pair<RouterId, std::uint32_t>> node_paths_;
  std::map<std::string, DrResult> segment_roles_;
  bool started_ = false;
};

}  // namespace bigp
