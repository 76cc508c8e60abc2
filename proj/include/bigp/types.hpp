#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace bigp {

using RouterId = std::uint32_t;
using Asn = std::uint32_t;

/// Simulated time in whole milliseconds (fixed point, so traces are
/// platform-independent).
using SimTime = std::int64_t;

constexpr SimTime kMsPerSec = 1000;

constexpr SimTime sim_seconds(std::int64_t s) { return s * kMsPerSec; }

/// "12.345" style rendering of a sim time, always three decimals.
std::string format_sim_seconds(SimTime t);

/// An IPv4 prefix. len == 0 matches everything (the default route).
struct Prefix {
  std::uint32_t addr = 0;
  std::uint8_t len = 0;

  auto operator<=>(const Prefix&) const = default;

  bool contains(std::uint32_t a) const;
  bool is_default() const { return addr == 0 && len == 0; }
  std::string str() const;
};

std::uint32_t mask_for(std::uint8_t len);

std::string format_addr(std::uint32_t addr);
std::optional<std::uint32_t> parse_addr(const std::string& s);
std::optional<Prefix> parse_prefix(const std::string& s);

/// Router names are "R<id>" everywhere: scenarios, traces, dumps.
std::string router_name(RouterId id);
std::optional<RouterId> parse_router_name(const std::string& s);

}  // namespace bigp
