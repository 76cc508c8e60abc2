#pragma once

#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bigp/algorithm1.hpp"
#include "bigp/algorithm2.hpp"
#include "bigp/metrics.hpp"
#include "bigp/router_core.hpp"
#include "bigp/scenario.hpp"
#include "bigp/types.hpp"

namespace bigp {

/// A module invariant tripped mid-run (fail fast; CLI exit 2).
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DumpRequest {
  RouterId router = 0;
  SimTime at = 0;
};

struct RunOutputs {
  Metrics metrics;
  std::string trace;
  std::vector<std::string> dumps;
};

/// Deterministic discrete-event world. Strictly single-threaded; events are
/// processed in (time, seq) order with seq assigned at insertion. The seed
/// feeds only explicitly randomized knobs — there are none by default, so
/// default runs are seed-independent.
class World {
 public:
  World(const Scenario& scenario, std::uint64_t seed = 0);
  ~World();

  World(const World&) = delete;
  World& operator=(const World&) = delete;

  /// Must be called before run().
  void schedule_dump(RouterId router, SimTime at);

  /// Processes events with time <= until. Callable once.
  void run(SimTime until);
  void run() { run(scenario_.run_until); }

  const Metrics& metrics() const { return metrics_; }
  const std::string& trace() const { return trace_; }
  const std::vector<std::string>& dumps() const { return dumps_; }

  std::string dump_router(RouterId id) const;
  const IgpEngine& igp(RouterId id) const;
  const BgpEngine& bgp(RouterId id) const;
  std::uint64_t counter(RouterId id, const std::string& name) const;
  SimTime now() const { return now_; }

 private:
  struct RouterNode;
  struct Envelope;
  struct Event;
  struct EventQueue;

  void push_event(Event ev);
  void process_event(const Event& ev);
  void handle_startup();
  void handle_deliver(const Event& ev);
  void handle_keepalive(const Event& ev);
  void handle_timer(const Event& ev);
  void handle_action(const ActionSpec& action);
  void handle_dump(RouterId router);

  void igp_send(RouterNode& r, RouterId to, MsgType type, const MessageBody& body,
                UpdateTag tag);
  void bgp_send(RouterNode& r, RouterId peer, const UpdateB& body, PeerKind kind);
  void keepalive_send(RouterNode& r, RouterId peer);
  void transport(RouterNode& from, RouterId to, std::shared_ptr<Envelope> env);
  void relay_bgp(RouterNode& r, const Event& ev);
  void forward_data(RouterNode& r, const BigpHeader& header, Data data,
                    std::shared_ptr<Envelope> env);
  void originate_ping(RouterNode& r, std::uint32_t dest);
  void finish_ping(int ping_id, bool delivered, const std::vector<RouterId>& hops,
                   const std::string& reason);

  void count_drop(RouterNode* r, const std::string& reason);
  void trace_message(RouterId from, RouterId to, const Envelope& env);
  void message_gone(const Envelope& env);  // in-flight bookkeeping at arrival/loss

  void sync_router_flags();
  void detect_table_changes();
  void check_invariants() const;
  void disturb(SimTime t);
  void begin_phase(SimTime t);
  void finalize_phase(SimTime end);

  std::size_t link_index(RouterId a, RouterId b) const;
  RouterNode& node(RouterId id);
  const RouterNode& node(RouterId id) const;

  struct LinkRuntime {
    LinkSpec spec;
    bool up = true;
    std::uint64_t epoch = 0;
  };

  Scenario scenario_;
  std::mt19937_64 rng_;
  std::map<RouterId, std::unique_ptr<RouterNode>> routers_;
  std::vector<LinkRuntime> links_;
  std::map<std::pair<RouterId, RouterId>, std::size_t> link_ids_;
  std::map<Asn, std::set<Prefix>> domain_prefixes_;

  std::unique_ptr<EventQueue> queue_;
  std::uint64_t next_seq_ = 0;
  SimTime now_ = 0;
  bool ran_ = false;

  Metrics metrics_;
  std::string trace_;
  std::vector<std::string> dumps_;
  std::map<RouterId, std::string> table_cache_;

  // Convergence detection for the current phase.
  SimTime phase_start_ = 0;
  SimTime last_disturbance_ = 0;
  std::int64_t blocking_in_flight_ = 0;
};

RunOutputs run_scenario(const Scenario& scenario,
                        std::optional<SimTime> until = std::nullopt,
                        std::uint64_t seed = 0,
                        const std::vector<DumpRequest>& dump_requests = {});

}  // namespace bigp
