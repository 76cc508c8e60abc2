#pragma once

#include <cstdint>

#include "bigp/types.hpp"
#include "bigp/wire_format.hpp"

namespace bigp {

/// Sim-level classification of an UPDATE_A flood. Re-floods inherit the tag
/// of the message that carried the LSA in; only Refresh floods are treated as
/// periodic by the convergence detector.
enum class UpdateTag { None, Refresh, Triggered, Snapshot };

const char* to_string(UpdateTag t);

enum class TimerKind {
  HelloTick,      // per router
  NeighborDead,   // key = neighbor id
  Refresh,        // per router, absolute refresh grid
  KeepaliveTick,  // key = external peer id
  HoldExpiry,     // key = external peer id
};

enum class PeerKind { EXTERNAL, INTERNAL };

const char* to_string(PeerKind k);

/// Transport and timer services the simulator provides to a protocol engine.
/// Engines stay wire- and clock-free; the host stamps, encodes and schedules.
class EngineHost {
 public:
  virtual ~EngineHost() = default;

  /// Send an intra-mode message (HELLO / UPDATE_A) to a directly linked peer.
  virtual void send_igp(RouterId to, MsgType type, const MessageBody& body,
                        UpdateTag tag) = 0;

  /// Send an UPDATE_B to a session peer. External peers are directly linked;
  /// internal peers are reached over intra forwarding.
  virtual void send_bgp(RouterId peer, const UpdateB& body, PeerKind kind) = 0;

  /// Session liveness probe. Not a wire message; not traced or counted.
  virtual void send_keepalive(RouterId peer) = 0;

  virtual void arm_timer(SimTime at, TimerKind kind, RouterId key) = 0;

  virtual void count(const char* counter) = 0;
};

}  // namespace bigp
