#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigp/router_core.hpp"
#include "bigp/types.hpp"

namespace bigp {

struct LinkSpec {
  RouterId a = 0;
  RouterId b = 0;
  std::uint32_t cost = 10;
  SimTime delay = 1;  // ms
  std::optional<std::string> segment;
};

struct Topology {
  std::vector<RouterConfig> nodes;
  std::vector<LinkSpec> links;
  std::map<std::string, std::string> params;
  Asn asn_split = kDefaultAsnSplit;
  SimTime quiet_window = sim_seconds(5);
};

struct ActionSpec {
  enum class Kind { LinkDown, LinkUp, Ping, SetLocalPref };

  SimTime at = 0;
  Kind kind = Kind::Ping;
  RouterId x = 0;              // first router argument
  RouterId y = 0;              // second router argument (links, set_local_pref)
  std::uint32_t dest_addr = 0;  // ping
  std::uint32_t value = 0;      // set_local_pref
};

struct Scenario {
  Topology topology;
  std::vector<ActionSpec> actions;
  SimTime run_until = 0;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };

  ScenarioError(Kind kind, int line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Parses and validates the line-oriented scenario format:
///   param asn_split 32768
///   node R1 asn 200 prefix 10.1.0.0/16 [stub] [priority N] [refresh N]
///   link R1 R3 cost 10 delay_ms 5 [segment ID]
///   at 50.0 link_down R1 R3
///   at 80.0 ping R2 10.4.0.1
///   run_until 200.0
/// Throws ScenarioError with the offending line number.
Scenario load_scenario(const std::string& text);

}  // namespace bigp
