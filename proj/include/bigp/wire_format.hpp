#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bigp/types.hpp"

namespace bigp {

enum class MsgType : std::uint8_t {
  HELLO = 1,
  UPDATE_A = 2,
  UPDATE_B = 3,
  DATA = 4,
};

const char* to_string(MsgType t);

/// Fixed 14-byte packet header. Byte layout (big-endian throughout):
///   byte 0      version (high nibble) | flags (bit3 CBI, bit2 CBB, bits 1-0 reserved)
///   byte 1      msg_type
///   bytes 2-5   asn
///   bytes 6-9   router_id (originator)
///   bytes 10-11 payload_len
///   bytes 12-13 checksum (ones'-complement over the whole packet, field zeroed)
struct BigpHeader {
  std::uint8_t version = 1;
  bool cbi = false;
  bool cbb = false;
  Asn asn = 0;
  MsgType msg_type = MsgType::HELLO;
  RouterId router_id = 0;
  std::uint16_t payload_len = 0;
  std::uint16_t checksum = 0;

  bool operator==(const BigpHeader&) const = default;
};

constexpr std::size_t kHeaderSize = 14;

struct Hello {
  std::uint8_t priority = 0;
  std::vector<RouterId> seen_neighbors;

  bool operator==(const Hello&) const = default;
};

/// Link-state advertisement. Receivers keep only the highest seq per origin.
struct Lsa {
  RouterId origin_id = 0;
  std::uint32_t seq = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> links;  // (neighbor_or_segment_id, cost)
  std::vector<Prefix> prefixes;
  bool is_asbr = false;
  bool is_stub = false;
  SimTime age_at = 0;  // origination instant, sim ms

  bool operator==(const Lsa&) const = default;
};

struct UpdateA {
  std::vector<Lsa> lsas;

  bool operator==(const UpdateA&) const = default;
};

/// A path-vector route. from_peer / learned_internal describe the route's
/// provenance at the sender; receivers overwrite both from their own session
/// state when storing the candidate.
struct PathCandidate {
  Prefix prefix;
  std::vector<Asn> as_path;  // most recent hop first
  std::uint32_t local_pref = 100;
  RouterId from_peer = 0;
  bool learned_internal = false;

  bool operator==(const PathCandidate&) const = default;
};

struct UpdateB {
  std::vector<PathCandidate> advertised;
  std::vector<Prefix> withdrawn;

  bool operator==(const UpdateB&) const = default;
};

struct Data {
  std::uint32_t dest_addr = 0;
  std::uint8_t hop_count = 0;
  std::uint32_t payload_tag = 0;

  bool operator==(const Data&) const = default;
};

/// Variant index == msg_type - 1.
using MessageBody = std::variant<Hello, UpdateA, UpdateB, Data>;

MsgType body_type(const MessageBody& body);

enum class WireErrc {
  Truncated,
  BadChecksum,
  BadVersion,
  BadFlags,
  UnknownMsgType,
  InvariantViolation,
  LengthOverflow,
};

const char* to_string(WireErrc e);

class WireError : public std::runtime_error {
 public:
  WireError(WireErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  WireErrc code() const { return code_; }

 private:
  WireErrc code_;
};

/// Ones'-complement of the ones'-complement sum of big-endian 16-bit words,
/// odd trailing byte padded with zero (the classic internet checksum).
std::uint16_t compute_checksum(std::span<const std::uint8_t> bytes);

/// Serializes header + body. payload_len and checksum in the output are
/// computed here; the caller's header fields for them are ignored.
/// Throws WireError (InvariantViolation, LengthOverflow).
std::vector<std::uint8_t> encode(const BigpHeader& header, const MessageBody& body);

/// Parses arbitrary bytes. Throws WireError with one of: Truncated,
/// BadChecksum, BadVersion, BadFlags, UnknownMsgType.
std::pair<BigpHeader, MessageBody> decode(std::span<const std::uint8_t> bytes);

}  // namespace bigp
