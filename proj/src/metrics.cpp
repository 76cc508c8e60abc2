#include "bigp/metrics.hpp"

#include <sstream>

#include <json.hpp>

namespace bigp {

namespace {

double to_seconds(SimTime t) { return static_cast<double>(t) / kMsPerSec; }

std::uint64_t count_of(const std::map<MsgType, std::uint64_t>& m, MsgType t) {
  auto it = m.find(t);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

std::string metrics_to_json(const Metrics& m) {
  nlohmann::ordered_json j;
  j["phases"] = nlohmann::ordered_json::array();
  for (const PhaseMetrics& p : m.phases) {
    nlohmann::ordered_json pj;
    pj["phase"] = p.index;
    pj["start_s"] = to_seconds(p.start);
    pj["converged"] = p.converged;
    if (p.convergence_ms)
      pj["convergence_time_s"] = to_seconds(*p.convergence_ms);
    else
      pj["convergence_time_s"] = nullptr;
    pj["hello"] = count_of(p.msg_counts, MsgType::HELLO);
    pj["update_a"] = count_of(p.msg_counts, MsgType::UPDATE_A);
    pj["update_b"] = count_of(p.msg_counts, MsgType::UPDATE_B);
    pj["data"] = count_of(p.msg_counts, MsgType::DATA);
    pj["drops"] = p.drops;
    j["phases"].push_back(pj);
  }
  nlohmann::ordered_json counts;
  counts["hello"] = count_of(m.msg_counts, MsgType::HELLO);
  counts["update_a"] = count_of(m.msg_counts, MsgType::UPDATE_A);
  counts["update_b"] = count_of(m.msg_counts, MsgType::UPDATE_B);
  counts["data"] = count_of(m.msg_counts, MsgType::DATA);
  j["msg_counts"] = counts;
  nlohmann::ordered_json per_router;
  for (const auto& [id, by_type] : m.per_router) {
    nlohmann::ordered_json rj;
    rj["hello"] = count_of(by_type, MsgType::HELLO);
    rj["update_a"] = count_of(by_type, MsgType::UPDATE_A);
    rj["update_b"] = count_of(by_type, MsgType::UPDATE_B);
    rj["data"] = count_of(by_type, MsgType::DATA);
    per_router[router_name(id)] = rj;
  }
  j["per_router"] = per_router;
  nlohmann::ordered_json drops;
  for (const auto& [reason, n] : m.drops) drops[reason] = n;
  j["drops"] = drops;
  j["pings"] = nlohmann::ordered_json::array();
  for (const PingRecord& p : m.pings) {
    nlohmann::ordered_json pj;
    pj["t_s"] = to_seconds(p.t);
    pj["src"] = router_name(p.src);
    pj["dest"] = format_addr(p.dest);
    pj["delivered"] = p.delivered;
    nlohmann::ordered_json hops = nlohmann::ordered_json::array();
    for (RouterId h : p.hops) hops.push_back(router_name(h));
    pj["hops"] = hops;
    if (!p.delivered) pj["drop_reason"] = p.drop_reason;
    j["pings"].push_back(pj);
  }
  return j.dump(2) + "\n";
}

std::string metrics_to_csv(const Metrics& m) {
  std::ostringstream os;
  os << "phase,converged,convergence_time_s,hello,update_a,update_b,data,drops\n";
  for (const PhaseMetrics& p : m.phases) {
    os << p.index << ',' << (p.converged ? 1 : 0) << ',';
    if (p.convergence_ms) os << format_sim_seconds(*p.convergence_ms);
    os << ',' << count_of(p.msg_counts, MsgType::HELLO) << ','
       << count_of(p.msg_counts, MsgType::UPDATE_A) << ','
       << count_of(p.msg_counts, MsgType::UPDATE_B) << ','
       << count_of(p.msg_counts, MsgType::DATA) << ',' << p.drops << '\n';
  }
  return os.str();
}

}  // namespace bigp
