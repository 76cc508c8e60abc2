#include "bigp/wire_format.hpp"

namespace bigp {

namespace {

constexpr std::uint8_t kFlagCbi = 0x08;
constexpr std::uint8_t kFlagCbb = 0x04;
constexpr std::uint8_t kFlagReserved = 0x03;

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  void u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v >> 32));
    u32(static_cast<std::uint32_t>(v));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }
  std::size_t size() const { return out_.size(); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> buf) : buf_(buf) {}

  std::uint8_t u8() {
    need(1);
    return buf_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(buf_[pos_] << 8 | buf_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t hi = u16();
    return hi << 16 | u16();
  }
  std::uint64_t u64() {
    std::uint64_t hi = u32();
    return hi << 32 | u32();
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > buf_.size())
      throw WireError(WireErrc::Truncated, "body shorter than its structure");
  }
  std::span<const std::uint8_t> buf_;
  std::size_t pos_ = 0;
};

template <typename T>
std::uint16_t checked_count(const std::vector<T>& v, const char* what) {
  if (v.size() > 0xFFFF)
    throw WireError(WireErrc::LengthOverflow,
                    std::string(what) + " list exceeds 65535 entries");
  return static_cast<std::uint16_t>(v.size());
}

void write_prefix(ByteWriter& w, const Prefix& p) {
  if (p.len > 32)
    throw WireError(WireErrc::InvariantViolation, "prefix length > 32");
  w.u32(p.addr);
  w.u8(p.len);
}

Prefix read_prefix(ByteReader& r) {
  Prefix p;
  p.addr = r.u32();
  p.len = r.u8();
  if (p.len > 32) throw WireError(WireErrc::Truncated, "prefix length > 32");
  return p;
}

void write_body(ByteWriter& w, const MessageBody& body) {
  std::visit(
      [&w](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Hello>) {
          w.u8(b.priority);
          w.u16(checked_count(b.seen_neighbors, "seen_neighbors"));
          for (RouterId id : b.seen_neighbors) w.u32(id);
        } else if constexpr (std::is_same_v<T, UpdateA>) {
          w.u16(checked_count(b.lsas, "lsas"));
          for (const Lsa& lsa : b.lsas) {
            w.u32(lsa.origin_id);
            w.u32(lsa.seq);
            w.u8(static_cast<std::uint8_t>((lsa.is_asbr ? 1 : 0) |
                                           (lsa.is_stub ? 2 : 0)));
            w.u64(static_cast<std::uint64_t>(lsa.age_at));
            w.u16(checked_count(lsa.links, "links"));
            for (auto [id, cost] : lsa.links) {
              w.u32(id);
              w.u32(cost);
            }
            w.u16(checked_count(lsa.prefixes, "prefixes"));
            for (const Prefix& p : lsa.prefixes) write_prefix(w, p);
          }
        } else if constexpr (std::is_same_v<T, UpdateB>) {
          w.u16(checked_count(b.advertised, "advertised"));
          for (const PathCandidate& c : b.advertised) {
            write_prefix(w, c.prefix);
            w.u16(checked_count(c.as_path, "as_path"));
            for (Asn a : c.as_path) w.u32(a);
            w.u32(c.local_pref);
            w.u32(c.from_peer);
            w.u8(c.learned_internal ? 1 : 0);
          }
          w.u16(checked_count(b.withdrawn, "withdrawn"));
          for (const Prefix& p : b.withdrawn) write_prefix(w, p);
        } else {
          static_assert(std::is_same_v<T, Data>);
          w.u32(b.dest_addr);
          w.u8(b.hop_count);
          w.u32(b.payload_tag);
        }
      },
      body);
}

MessageBody read_body(MsgType type, std::span<const std::uint8_t> buf) {
  ByteReader r(buf);
  MessageBody body;
  switch (type) {
    case MsgType::HELLO: {
      Hello h;
      h.priority = r.u8();
      std::uint16_t n = r.u16();
      h.seen_neighbors.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) h.seen_neighbors.push_back(r.u32());
      body = std::move(h);
      break;
    }
    case MsgType::UPDATE_A: {
      UpdateA u;
      std::uint16_t n = r.u16();
      u.lsas.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) {
        Lsa lsa;
        lsa.origin_id = r.u32();
        lsa.seq = r.u32();
        std::uint8_t flags = r.u8();
        lsa.is_asbr = flags & 1;
        lsa.is_stub = flags & 2;
        lsa.age_at = static_cast<SimTime>(r.u64());
        std::uint16_t nl = r.u16();
        lsa.links.reserve(nl);
        for (std::uint16_t j = 0; j < nl; ++j) {
          std::uint32_t id = r.u32();
          std::uint32_t cost = r.u32();
          lsa.links.emplace_back(id, cost);
        }
        std::uint16_t np = r.u16();
        lsa.prefixes.reserve(np);
        for (std::uint16_t j = 0; j < np; ++j) lsa.prefixes.push_back(read_prefix(r));
        u.lsas.push_back(std::move(lsa));
      }
      body = std::move(u);
      break;
    }
    case MsgType::UPDATE_B: {
      UpdateB u;
      std::uint16_t na = r.u16();
      u.advertised.reserve(na);
      for (std::uint16_t i = 0; i < na; ++i) {
        PathCandidate c;
        c.prefix = read_prefix(r);
        std::uint16_t np = r.u16();
        c.as_path.reserve(np);
        for (std::uint16_t j = 0; j < np; ++j) c.as_path.push_back(r.u32());
        c.local_pref = r.u32();
        c.from_peer = r.u32();
        c.learned_internal = r.u8() != 0;
        u.advertised.push_back(std::move(c));
      }
      std::uint16_t nw = r.u16();
      u.withdrawn.reserve(nw);
      for (std::uint16_t i = 0; i < nw; ++i) u.withdrawn.push_back(read_prefix(r));
      body = std::move(u);
      break;
    }
    case MsgType::DATA: {
      Data d;
      d.dest_addr = r.u32();
      d.hop_count = r.u8();
      d.payload_tag = r.u32();
      body = d;
      break;
    }
  }
  if (!r.done())
    throw WireError(WireErrc::Truncated, "trailing bytes after body");
  return body;
}

}  // namespace

const char* to_string(MsgType t) {
  switch (t) {
    case MsgType::HELLO: return "HELLO";
    case MsgType::UPDATE_A: return "UPDATE_A";
    case MsgType::UPDATE_B: return "UPDATE_B";
    case MsgType::DATA: return "DATA";
  }
  return "?";
}

const char* to_string(WireErrc e) {
  switch (e) {
    case WireErrc::Truncated: return "Truncated";
    case WireErrc::BadChecksum: return "BadChecksum";
    case WireErrc::BadVersion: return "BadVersion";
    case WireErrc::BadFlags: return "BadFlags";
    case WireErrc::UnknownMsgType: return "UnknownMsgType";
    case WireErrc::InvariantViolation: return "InvariantViolation";
    case WireErrc::LengthOverflow: return "LengthOverflow";
  }
  return "?";
}

MsgType body_type(const MessageBody& body) {
  return static_cast<MsgType>(body.index() + 1);
}

std::uint16_t compute_checksum(std::span<const std::uint8_t> bytes) {
  std::uint32_t sum = 0;
  std::size_t i = 0;
  for (; i + 1 < bytes.size(); i += 2)
    sum += static_cast<std::uint32_t>(bytes[i]) << 8 | bytes[i + 1];
  if (i < bytes.size()) sum += static_cast<std::uint32_t>(bytes[i]) << 8;
  while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
  return static_cast<std::uint16_t>(~sum);
}

std::vector<std::uint8_t> encode(const BigpHeader& header, const MessageBody& body) {
  if (header.version != 1)
    throw WireError(WireErrc::InvariantViolation, "version must be 1");
  if (header.cbi == header.cbb)
    throw WireError(WireErrc::InvariantViolation,
                    "exactly one of cbi/cbb must be set");
  if (body_type(body) != header.msg_type)
    throw WireError(WireErrc::InvariantViolation,
                    "body variant does not match msg_type");

  ByteWriter bw;
  write_body(bw, body);
  std::vector<std::uint8_t> payload = bw.take();
  if (payload.size() > 0xFFFF)
    throw WireError(WireErrc::LengthOverflow, "body exceeds 65535 bytes");

  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(header.version << 4 |
                                 (header.cbi ? kFlagCbi : 0) |
                                 (header.cbb ? kFlagCbb : 0)));
  w.u8(static_cast<std::uint8_t>(header.msg_type));
  w.u32(header.asn);
  w.u32(header.router_id);
  w.u16(static_cast<std::uint16_t>(payload.size()));
  w.u16(0);  // checksum placeholder
  std::vector<std::uint8_t> out = w.take();
  out.insert(out.end(), payload.begin(), payload.end());

  std::uint16_t cs = compute_checksum(out);
  out[12] = static_cast<std::uint8_t>(cs >> 8);
  out[13] = static_cast<std::uint8_t>(cs);
  return out;
}

std::pair<BigpHeader, MessageBody> decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize)
    throw WireError(WireErrc::Truncated, "fewer than 14 bytes");

  BigpHeader h;
  h.version = bytes[0] >> 4;
  if (h.version != 1) throw WireError(WireErrc::BadVersion, "version != 1");
  if (bytes[0] & kFlagReserved)
    throw WireError(WireErrc::BadFlags, "reserved flag bits set");
  h.cbi = bytes[0] & kFlagCbi;
  h.cbb = bytes[0] & kFlagCbb;
  if (h.cbi == h.cbb)
    throw WireError(WireErrc::BadFlags, "both or neither care bit set");

  std::uint8_t type = bytes[1];
  if (type < 1 || type > 4)
    throw WireError(WireErrc::UnknownMsgType, "unknown msg_type");
  h.msg_type = static_cast<MsgType>(type);

  h.asn = static_cast<std::uint32_t>(bytes[2]) << 24 |
          static_cast<std::uint32_t>(bytes[3]) << 16 |
          static_cast<std::uint32_t>(bytes[4]) << 8 | bytes[5];
  h.router_id = static_cast<std::uint32_t>(bytes[6]) << 24 |
                static_cast<std::uint32_t>(bytes[7]) << 16 |
                static_cast<std::uint32_t>(bytes[8]) << 8 | bytes[9];
  h.payload_len = static_cast<std::uint16_t>(bytes[10] << 8 | bytes[11]);
  h.checksum = static_cast<std::uint16_t>(bytes[12] << 8 | bytes[13]);

  if (bytes.size() != kHeaderSize + h.payload_len)
    throw WireError(WireErrc::Truncated, "payload_len mismatch");

  std::vector<std::uint8_t> zeroed(bytes.begin(), bytes.end());
  zeroed[12] = 0;
  zeroed[13] = 0;
  if (compute_checksum(zeroed) != h.checksum)
    throw WireError(WireErrc::BadChecksum, "checksum mismatch");

  MessageBody body = read_body(h.msg_type, bytes.subspan(kHeaderSize));
  return {h, std::move(body)};
}

}  // namespace bigp
