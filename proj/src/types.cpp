#include "bigp/types.hpp"

#include <cctype>
#include <cstdio>

namespace bigp {

std::string format_sim_seconds(SimTime t) {
  char buf[32];
  bool neg = t < 0;
  if (neg) t = -t;
  std::snprintf(buf, sizeof(buf), "%s%lld.%03lld", neg ? "-" : "",
                static_cast<long long>(t / kMsPerSec),
                static_cast<long long>(t % kMsPerSec));
  return buf;
}

std::uint32_t mask_for(std::uint8_t len) {
  if (len == 0) return 0;
  if (len >= 32) return 0xFFFFFFFFu;
  return ~((1u << (32 - len)) - 1u);
}

bool Prefix::contains(std::uint32_t a) const {
  return (a & mask_for(len)) == (addr & mask_for(len));
}

std::string Prefix::str() const {
  return format_addr(addr) + "/" + std::to_string(len);
}

std::string format_addr(std::uint32_t addr) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (addr >> 24) & 0xFF,
                (addr >> 16) & 0xFF, (addr >> 8) & 0xFF, addr & 0xFF);
  return buf;
}

std::optional<std::uint32_t> parse_addr(const std::string& s) {
  std::uint32_t parts[4];
  int n = 0;
  std::size_t i = 0;
  while (n < 4) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      return std::nullopt;
    std::uint32_t v = 0;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 255 || ++digits > 3) return std::nullopt;
      ++i;
    }
    parts[n++] = v;
    if (n < 4) {
      if (i >= s.size() || s[i] != '.') return std::nullopt;
      ++i;
    }
  }
  if (i != s.size()) return std::nullopt;
  return (parts[0] << 24) | (parts[1] << 16) | (parts[2] << 8) | parts[3];
}

std::optional<Prefix> parse_prefix(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return std::nullopt;
  auto addr = parse_addr(s.substr(0, slash));
  if (!addr) return std::nullopt;
  const std::string lenpart = s.substr(slash + 1);
  if (lenpart.empty() || lenpart.size() > 2) return std::nullopt;
  int len = 0;
  for (char c : lenpart) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    len = len * 10 + (c - '0');
  }
  if (len > 32) return std::nullopt;
  return Prefix{*addr, static_cast<std::uint8_t>(len)};
}

std::string router_name(RouterId id) { return "R" + std::to_string(id); }

std::optional<RouterId> parse_router_name(const std::string& s) {
  if (s.size() < 2 || s[0] != 'R') return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
    if (v > 0xFFFFFFFFull) return std::nullopt;
  }
  if (v == 0) return std::nullopt;
  return static_cast<RouterId>(v);
}

}  // namespace bigp
