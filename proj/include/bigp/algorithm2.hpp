#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bigp/engine_io.hpp"
#include "bigp/router_core.hpp"
#include "bigp/types.hpp"
#include "bigp/wire_format.hpp"

namespace bigp {

enum class SessionPhase { IDLE, ESTABLISHED };

struct PeerSession {
  RouterId peer_id = 0;
  Asn peer_high_asn = 0;
  PeerKind kind = PeerKind::EXTERNAL;
  SessionPhase state = SessionPhase::IDLE;
  SimTime keepalive_at = 0;  // last keepalive received (external sessions)
};

/// Deterministic best-path selection: (1) highest local_pref, (2) shortest
/// as_path, (3) EXTERNAL preferred over INTERNAL, (4) lowest from_peer id.
/// Order-independent; precondition: candidates nonempty.
const PathCandidate& best_path(const std::vector<PathCandidate>& candidates);

/// True when a strictly beats b under the rule ladder.
bool best_path_prefers(const PathCandidate& a, const PathCandidate& b);

/// What (if anything) an installed best route looks like when advertised to
/// to_peer: split horizon toward its source, internal-learned routes withheld
/// from internal peers, own high ASN prepended toward external peers.
std::optional<PathCandidate> advertise_policy(const PathCandidate& route,
                                              const PeerSession& to_peer,
                                              Asn own_high_asn);

struct ExternalPeerInfo {
  RouterId peer = 0;
  Asn peer_domain = 0;
};

/// Algorithm2: session-based, triggered-only path-vector engine over Table B.
/// External sessions are link-derived; internal sessions form an automatic
/// mesh of the domain's ASBRs, driven by the is_asbr flags in the LSDB.
class BgpEngine {
 public:
  BgpEngine(RouterConfig cfg, std::vector<ExternalPeerInfo> external_links,
            EngineHost* host,
            std::function<bool(const Prefix&)> own_domain_prefix);

  void on_external_link_up(RouterId peer, SimTime now);
  void on_update(RouterId from_peer, const UpdateB& update, SimTime now);
  void on_keepalive(RouterId peer, SimTime now);
  void on_timer(TimerKind kind, RouterId key, SimTime now);
  void set_peer_local_pref(RouterId peer, std::uint32_t lp, SimTime now);

  /// Reconciles the internal session set with the reachable ASBRs of the
  /// domain (from the caller's LSDB view).
  void update_internal_mesh(const std::set<RouterId>& reachable_asbrs, SimTime now);

  bool is_asbr() const;
  const TableB& table_b() const { return table_b_; }
  std::set<RouterId> established_peers() const;
  const std::map<RouterId, PeerSession>& sessions() const { return sessions_; }
  std::uint64_t loop_rejections() const { return loop_rejections_; }

 private:
  void establish_external(RouterId peer, Asn peer_domain, SimTime now);
  void establish_internal(RouterId peer, SimTime now);
  void session_down(RouterId peer, SimTime now);
  void rebuild_table();
  void full_resync(SimTime now);
  std::map<Prefix, PathCandidate> desired_out(const PeerSession& session) const;
  std::optional<PathCandidate> installed_best(const Prefix& p) const;

  RouterConfig cfg_;
  EngineHost* host_;
  std::function<bool(const Prefix&)> own_domain_prefix_;
  std::map<RouterId, Asn> external_link_peers_;
  std::map<RouterId, PeerSession> sessions_;
  std::map<Prefix, std::map<RouterId, PathCandidate>> cands_;
  std::map<RouterId, std::map<Prefix, PathCandidate>> adj_out_;
  std::map<RouterId, std::uint32_t> peer_lp_;
  std::set<RouterId> keepalive_chain_;
  TableB table_b_;
  std::uint64_t loop_rejections_ = 0;

  static constexpr int kKeepaliveIntervalS = 30;
  static constexpr int kHoldIntervalS = 90;
};

}  // namespace bigp
