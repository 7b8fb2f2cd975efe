#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "vanetsim/attack_profile.hpp"
#include "vanetsim/domain.hpp"
#include "vanetsim/rng.hpp"
#include "vanetsim/world.hpp"

namespace vanetsim {

// Id ranges keep adversary identities disjoint from legitimate vehicles
// (which are numbered from 1).
inline constexpr VehicleId kAttackerIdBase = 500'000;
inline constexpr VehicleId kGhostIdBase = 1'000'000;

inline bool is_attacker_id(VehicleId id) { return id >= kAttackerIdBase; }

// Attackers park inside RSRU coverage (radius 0.3..0.8 of tx_range around
// the unit) so their offered load reaches the detector for the whole run.
// All draws come from the attacker stream: toggling the attack never
// perturbs legitimate vehicles' randomness.
inline std::vector<VehicleState> make_attackers(const AttackerProfile& profile,
                                                const Position& rsru,
                                                double tx_range,
                                                RngStreams& rng) {
  std::vector<VehicleState> out;
  if (profile.mode == AttackMode::None) return out;
  out.reserve(static_cast<std::size_t>(profile.count));
  for (int i = 0; i < profile.count; ++i) {
    const double r = rng.uniform(RngStream::Attacker, 0.3, 0.8) * tx_range;
    const double a =
        rng.uniform(RngStream::Attacker, 0.0, 2.0 * std::numbers::pi);
    VehicleState v;
    v.id = kAttackerIdBase + static_cast<VehicleId>(i);
    v.pos = Position{rsru.x + r * std::cos(a), rsru.y + r * std::sin(a)};
    v.speed = 0.0;  // parked: sustained in-range load is the attack
    v.heading = Heading{1.0, 0.0};
    v.role = profile.mode == AttackMode::GhostJoin ? Role::Ghost : Role::Flooder;
    out.push_back(v);
  }
  return out;
}

// Flood traffic: beacons at profile.rate. The reported speed is forged above
// the envelope by default so the flood carries the high-rate signature; the
// honest option reports the attacker's true speed instead, exposing how a
// speed-consistent flood fares.
inline Packet flood_packet(const VehicleState& att, const AttackerProfile& profile,
                           const DetectionParams& params, std::uint64_t seq,
                           double t) {
  Packet pkt;
  pkt.seq = seq;
  pkt.sender = att.id;
  pkt.kind = PacketKind::Beacon;
  pkt.reported_speed = profile.forged_speed_honest
                           ? att.speed
                           : profile.forged_speed.value_or(params.v_max + 5.0);
  pkt.reported_pos = att.pos;
  pkt.ts_send = t;
  return pkt;
}

// False-information traffic: honest-rate alerts claiming a stopped vehicle.
inline Packet false_info_packet(const VehicleState& att,
                                const AttackerProfile& profile,
                                std::uint64_t seq, double t) {
  Packet pkt;
  pkt.seq = seq;
  pkt.sender = att.id;
  pkt.kind = PacketKind::AlertMsg;
  pkt.reported_speed = profile.forged_speed.value_or(0.0);
  pkt.reported_pos = att.pos;
  pkt.ts_send = t;
  return pkt;
}

// Ghost join traffic: a forged identity requesting admission. The reported
// speed sits mid-envelope so the request passes packet vetting and the
// admission slot rules have to catch it.
inline Packet ghost_packet(VehicleId ghost_id, const Position& from,
                           const DetectionParams& params, std::uint64_t seq,
                           double t) {
  Packet pkt;
  pkt.seq = seq;
  pkt.sender = ghost_id;
  pkt.kind = PacketKind::JoinRequest;
  pkt.reported_speed = (params.v_min + params.v_max) / 2.0;
  pkt.reported_pos = from;
  pkt.ts_send = t;
  return pkt;
}

// Emission cadence per mode: floods at profile.rate, false-info at the
// legitimate beacon rate, ghosts twice per admission slot (the second
// request lands in the same slot as the first, which is the signature the
// slot rule exists to catch).
inline double attack_emit_interval(const AttackerProfile& profile,
                                   double cbr_rate, double slot_duration) {
  switch (profile.mode) {
    case AttackMode::Flood: return 1.0 / profile.rate;
    case AttackMode::FalseInfo: return 1.0 / cbr_rate;
    case AttackMode::GhostJoin: return slot_duration / 2.0;
    case AttackMode::None: break;
  }
  return 0.0;
}

}  // namespace vanetsim
