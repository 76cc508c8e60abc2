#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bigp/wire_format.hpp"
#include "oracles.hpp"

using namespace bigp;

namespace {

BigpHeader make_header(MsgType type, bool intra, Asn asn, RouterId rid) {
  BigpHeader h;
  h.cbi = intra;
  h.cbb = !intra;
  h.asn = asn;
  h.msg_type = type;
  h.router_id = rid;
  return h;
}

WireErrc decode_errc(const std::vector<std::uint8_t>& bytes) {
  try {
    decode(bytes);
  } catch (const WireError& e) {
    return e.code();
  }
  FAIL("expected decode to reject");
  return WireErrc::Truncated;
}

std::mt19937 fuzz_rng(42);

MessageBody random_body(MsgType type, std::mt19937& rng, int max_len = 100) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> u32(0, 0xFFFFFFFFu);
  std::uniform_int_distribution<int> u8(0, 255);
  std::uniform_int_distribution<int> plen(0, 32);
  switch (type) {
    case MsgType::HELLO: {
      Hello h;
      h.priority = static_cast<std::uint8_t>(u8(rng));
      int n = len(rng);
      for (int i = 0; i < n; ++i) h.seen_neighbors.push_back(u32(rng));
      return h;
    }
    case MsgType::UPDATE_A: {
      UpdateA u;
      int n = len(rng) % 12;
      for (int i = 0; i < n; ++i) {
        Lsa lsa;
        lsa.origin_id = u32(rng);
        lsa.seq = u32(rng);
        lsa.is_asbr = u8(rng) & 1;
        lsa.is_stub = u8(rng) & 1;
        lsa.age_at = static_cast<SimTime>(u32(rng));
        int nl = len(rng) % 8;
        for (int j = 0; j < nl; ++j) lsa.links.emplace_back(u32(rng), u32(rng));
        int np = len(rng) % 8;
        for (int j = 0; j < np; ++j)
          lsa.prefixes.push_back(
              Prefix{u32(rng), static_cast<std::uint8_t>(plen(rng))});
        u.lsas.push_back(lsa);
      }
      return u;
    }
    case MsgType::UPDATE_B: {
      UpdateB u;
      int na = len(rng) % 12;
      for (int i = 0; i < na; ++i) {
        PathCandidate c;
        c.prefix = Prefix{u32(rng), static_cast<std::uint8_t>(plen(rng))};
        int np = len(rng) % 8;
        for (int j = 0; j < np; ++j) c.as_path.push_back(u32(rng));
        c.local_pref = u32(rng);
        c.from_peer = u32(rng);
        c.learned_internal = u8(rng) & 1;
        u.advertised.push_back(c);
      }
      int nw = len(rng) % 8;
      for (int i = 0; i < nw; ++i)
        u.withdrawn.push_back(Prefix{u32(rng), static_cast<std::uint8_t>(plen(rng))});
      return u;
    }
    case MsgType::DATA: {
      Data d;
      d.dest_addr = u32(rng);
      d.hop_count = static_cast<std::uint8_t>(u8(rng));
      d.payload_tag = u32(rng);
      return d;
    }
  }
  return Data{};
}

}  // namespace

TEST_CASE("checksum: closed-form values") {
  CHECK(compute_checksum({}) == 0xFFFF);
  std::vector<std::uint8_t> one_word{0x00, 0x01};
  CHECK(compute_checksum(one_word) == 0xFFFE);
  std::vector<std::uint8_t> odd{0x01};  // padded with zero -> word 0x0100
  CHECK(compute_checksum(odd) == 0xFEFF);
}

TEST_CASE("checksum matches the independent summation oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 200), byte(0, 255);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len(rng)));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(byte(rng));
    CHECK(compute_checksum(bytes) == testing::checksum_oracle(bytes));
  }
}

TEST_CASE("header byte 0 carries version and care bits") {
  auto intra = encode(make_header(MsgType::HELLO, true, 100, 1), Hello{});
  CHECK(intra[0] == 0x18);
  auto inter = encode(make_header(MsgType::DATA, false, 40000, 1), Data{});
  CHECK(inter[0] == 0x14);
}

TEST_CASE("empty hello packet layout and checksum property") {
  BigpHeader h = make_header(MsgType::HELLO, true, 100, 1);
  auto bytes = encode(h, Hello{});
  // 14-byte header + priority byte + 16-bit neighbor count.
  REQUIRE(bytes.size() == 17);
  CHECK(bytes[1] == 0x01);
  CHECK(bytes[5] == 100);   // asn low byte
  CHECK(bytes[9] == 1);     // router id low byte
  CHECK(bytes[11] == 3);    // payload_len

  std::vector<std::uint8_t> zeroed = bytes;
  zeroed[12] = zeroed[13] = 0;
  std::uint16_t expect = testing::checksum_oracle(zeroed);
  CHECK((static_cast<std::uint16_t>(bytes[12] << 8 | bytes[13])) == expect);
  // With the checksum installed, the ones'-complement sum over the whole
  // packet is 0xFFFF (i.e. compute_checksum reports 0).
  CHECK(compute_checksum(bytes) == 0);
}

TEST_CASE("round-trip across all message types and list lengths") {
  for (int iter = 0; iter < 800; ++iter) {
    auto type = static_cast<MsgType>(1 + iter % 4);
    std::uniform_int_distribution<std::uint32_t> u32(1, 0xFFFFFFFEu);
    BigpHeader h = make_header(type, iter % 2 == 0, u32(fuzz_rng), u32(fuzz_rng));
    MessageBody body = random_body(type, fuzz_rng);
    std::vector<std::uint8_t> bytes = encode(h, body);

    auto [dh, dbody] = decode(bytes);
    CHECK(dh.version == 1);
    CHECK(dh.cbi == h.cbi);
    CHECK(dh.cbb == h.cbb);
    CHECK(dh.asn == h.asn);
    CHECK(dh.router_id == h.router_id);
    CHECK(dh.msg_type == h.msg_type);
    CHECK(dh.payload_len == bytes.size() - kHeaderSize);
    CHECK(dbody == body);
    CHECK(encode(dh, dbody) == bytes);
    // Verification property of the installed checksum.
    CHECK(compute_checksum(bytes) == 0);
  }
}

TEST_CASE("decode rejects short and mismatched input") {
  std::vector<std::uint8_t> small(13, 0);
  CHECK(decode_errc(small) == WireErrc::Truncated);

  auto ok = encode(make_header(MsgType::DATA, true, 5, 9), Data{1, 2, 3});
  auto longer = ok;
  longer.push_back(0);
  CHECK(decode_errc(longer) == WireErrc::Truncated);
  auto shorter = ok;
  shorter.pop_back();
  CHECK(decode_errc(shorter) == WireErrc::Truncated);
}

TEST_CASE("decode rejects bad version, flags and message type") {
  auto ok = encode(make_header(MsgType::DATA, true, 5, 9), Data{1, 2, 3});

  auto bad_version = ok;
  bad_version[0] = 0x28;  // version 2
  CHECK(decode_errc(bad_version) == WireErrc::BadVersion);

  auto both_bits = ok;
  both_bits[0] = 0x1C;
  CHECK(decode_errc(both_bits) == WireErrc::BadFlags);

  auto no_bits = ok;
  no_bits[0] = 0x10;
  CHECK(decode_errc(no_bits) == WireErrc::BadFlags);

  auto reserved = ok;
  reserved[0] = 0x19;
  CHECK(decode_errc(reserved) == WireErrc::BadFlags);

  auto bad_type = ok;
  bad_type[1] = 9;
  CHECK(decode_errc(bad_type) == WireErrc::UnknownMsgType);
  auto zero_type = ok;
  zero_type[1] = 0;
  CHECK(decode_errc(zero_type) == WireErrc::UnknownMsgType);
}

TEST_CASE("every single-bit flip of a reference packet is detected") {
  BigpHeader h = make_header(MsgType::HELLO, true, 100, 1);
  Hello body;
  body.priority = 7;
  body.seen_neighbors = {2, 3};
  auto ok = encode(h, body);
  auto [h0, b0] = decode(ok);

  int rejected = 0, changed = 0;
  for (std::size_t byte = 0; byte < ok.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      auto mutated = ok;
      mutated[byte] ^= static_cast<std::uint8_t>(1 << bit);
      try {
        auto [h1, b1] = decode(mutated);
        // Ones'-complement detects any single-bit flip, so a successful
        // decode must mean the content differs (it cannot happen here).
        CHECK((h1 != h0 || !(b1 == MessageBody{b0})));
        ++changed;
      } catch (const WireError&) {
        ++rejected;
      }
    }
  }
  CHECK(rejected == static_cast<int>(ok.size() * 8));
  CHECK(changed == 0);
}

TEST_CASE("decode totality: arbitrary bytes yield success or one declared error") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> len(0, 80), byte(0, 255);
  for (int i = 0; i < 3000; ++i) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len(rng)));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(byte(rng));
    try {
      auto [h, body] = decode(bytes);
      CHECK(h.cbi != h.cbb);  // care-bit exclusivity on every decode success
    } catch (const WireError& e) {
      bool declared = e.code() == WireErrc::Truncated ||
                      e.code() == WireErrc::BadChecksum ||
                      e.code() == WireErrc::BadVersion ||
                      e.code() == WireErrc::BadFlags ||
                      e.code() == WireErrc::UnknownMsgType;
      CHECK(declared);
    }
  }
}

TEST_CASE("encode rejects invariant violations") {
  BigpHeader both = make_header(MsgType::HELLO, true, 1, 1);
  both.cbb = true;
  CHECK_THROWS_AS(encode(both, Hello{}), WireError);

  BigpHeader neither = make_header(MsgType::HELLO, true, 1, 1);
  neither.cbi = false;
  CHECK_THROWS_AS(encode(neither, Hello{}), WireError);

  BigpHeader mismatch = make_header(MsgType::HELLO, true, 1, 1);
  CHECK_THROWS_AS(encode(mismatch, MessageBody{Data{}}), WireError);

  BigpHeader v2 = make_header(MsgType::HELLO, true, 1, 1);
  v2.version = 2;
  CHECK_THROWS_AS(encode(v2, Hello{}), WireError);
}

TEST_CASE("encode rejects oversized bodies") {
  Hello big;
  big.seen_neighbors.assign(20000, 1);  // 80 KB of neighbor ids
  try {
    encode(make_header(MsgType::HELLO, true, 1, 1), big);
    FAIL("expected LengthOverflow");
  } catch (const WireError& e) {
    CHECK(e.code() == WireErrc::LengthOverflow);
  }
}
