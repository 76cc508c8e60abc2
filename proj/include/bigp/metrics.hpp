#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigp/types.hpp"
#include "bigp/wire_format.hpp"

namespace bigp {

struct PhaseMetrics {
  int index = 0;
  SimTime start = 0;
  bool converged = false;
  std::optional<SimTime> convergence_ms;  // stability onset minus phase start
  std::map<MsgType, std::uint64_t> msg_counts;
  std::uint64_t drops = 0;
};

struct PingRecord {
  SimTime t = 0;
  RouterId src = 0;
  std::uint32_t dest = 0;
  bool delivered = false;
  std::vector<RouterId> hops;
  std::string drop_reason;  // empty when delivered
};

struct Metrics {
  std::vector<PhaseMetrics> phases;
  std::map<MsgType, std::uint64_t> msg_counts;                    // totals
  std::map<RouterId, std::map<MsgType, std::uint64_t>> per_router;  // sent by src
  std::map<std::string, std::uint64_t> drops;
  std::vector<PingRecord> pings;
};

/// One JSON object carrying the metrics verbatim (stable key order).
std::string metrics_to_json(const Metrics& m);

/// header: phase,converged,convergence_time_s,hello,update_a,update_b,data,drops
std::string metrics_to_csv(const Metrics& m);

}  // namespace bigp
