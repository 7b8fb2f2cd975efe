#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vanetsim/attack_profile.hpp"

namespace vanetsim {

using VehicleId = std::uint64_t;

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  bool operator==(const Position&) const = default;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Unit direction vector.
struct Heading {
  double x = 1.0;
  double y = 0.0;

  bool operator==(const Heading&) const = default;
};

enum class Role { Legitimate, Flooder, Ghost };

struct VehicleState {
  VehicleId id = 0;
  Position pos{};
  double speed = 0.0;  // meters/second, actual kinematic speed
  Heading heading{};
  Role role = Role::Legitimate;
  bool admitted = false;  // has submitted its join request
};

enum class PacketKind { Beacon, JoinRequest, AlertMsg };

// One application message in flight. reported_* fields are what the sender
// claims; attackers may forge them. ts_send is stamped at emission.
struct Packet {
  std::uint64_t seq = 0;  // strictly increasing per sender
  VehicleId sender = 0;
  PacketKind kind = PacketKind::Beacon;
  double reported_speed = 0.0;   // meters/second
  Position reported_pos{};
  double ts_send = 0.0;          // seconds, simulation clock at emission
  int size = 512;                // bytes
};

// Rule parameters for the two-phase detector. m_max is the packet-rate cap
// the rate rules compare against; the speed envelope is [v_min, v_max].
struct DetectionParams {
  double m_max = 20.0;          // packets per rate_window second
  double alpha = 1.0;           // road coefficient for the expected-rate model
  double v_max = 30.0;          // meters/second
  double v_min = 5.0;           // meters/second
  double ts_threshold = 0.1;    // seconds; older packets are discarded
  double rate_window = 1.0;     // seconds of arrival history per sender
  double slot_duration = 0.1;   // seconds per admission slot
  double flood_factor = 2.0;    // request-count multiple over the busiest peer
  int step_tolerance = 1;       // allowed |heartbeats - expected slots|
  // Off by default: flag senders whose observed rate strays more than
  // rate_slack from the expected-rate model as suspicious (counted, not dropped).
  bool rate_consistency_check = false;
  double rate_slack = 5.0;      // packets/second
  // Estimate sender speed from successive reported positions instead of
  // trusting reported_speed.
  bool speed_from_positions = false;

  bool operator==(const DetectionParams&) const = default;
};

enum class DetectorKind { PSecure, Baseline };

// Every tunable of one simulation run.
struct ScenarioConfig {
  double area_width = 1000.0;    // meters
  double area_height = 1000.0;   // meters
  double tx_range = 250.0;       // meters
  int density = 100;             // legitimate vehicle count
  double duration = 200.0;       // seconds
  std::uint64_t seed = 1;
  DetectorKind detector = DetectorKind::PSecure;
  double cbr_rate = 4.0;         // beacons/second per legitimate vehicle
  int buffer_capacity = 150;     // packets the receive buffer holds
  double hop_delay_base = 0.002;    // seconds per delivered hop
  double hop_delay_jitter = 0.001;  // seconds, uniform additive jitter
  double verify_delay = 0.002;      // seconds/packet, baseline verifier only
  double move_tick = 0.1;           // seconds between mobility updates
  double speed_resample_interval = 10.0;  // seconds between speed redraws
  AttackerProfile attacker{};
  DetectionParams detection{};

  bool operator==(const ScenarioConfig&) const = default;
};

// Returns every violated invariant, each naming the field and the bound.
// An empty list means the config is valid. Violations are data, not failures.
inline std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> v;
  auto require = [&](bool ok, const char* bound) {
    if (!ok) v.emplace_back(bound);
  };

  require(cfg.area_width > 0.0, "area_width > 0");
  require(cfg.area_height > 0.0, "area_height > 0");
  require(cfg.tx_range > 0.0, "tx_range > 0");
  require(cfg.density >= 1, "density ≥ 1");
  require(cfg.duration > 0.0, "duration > 0");
  require(cfg.buffer_capacity >= 1, "buffer_capacity ≥ 1");
  require(cfg.cbr_rate > 0.0, "cbr_rate > 0");
  require(cfg.hop_delay_base >= 0.0, "hop_delay_base ≥ 0");
  require(cfg.hop_delay_jitter >= 0.0, "hop_delay_jitter ≥ 0");
  require(cfg.verify_delay >= 0.0, "verify_delay ≥ 0");
  require(cfg.move_tick > 0.0, "move_tick > 0");
  require(cfg.speed_resample_interval > 0.0, "speed_resample_interval > 0");

  const DetectionParams& d = cfg.detection;
  require(d.m_max >= 1.0, "m_max ≥ 1");
  require(d.alpha >= 0.0, "alpha ≥ 0");
  require(d.v_min >= 0.0, "0 ≤ v_min");
  require(d.v_min < d.v_max, "v_min < v_max");
  require(d.ts_threshold > 0.0, "ts_threshold > 0");
  require(d.rate_window > 0.0, "rate_window > 0");
  require(d.slot_duration > 0.0, "slot_duration > 0");
  require(d.flood_factor >= 1.0, "flood_factor ≥ 1");
  require(d.step_tolerance >= 0, "step_tolerance ≥ 0");
  require(d.rate_slack >= 0.0, "rate_slack ≥ 0");

  const AttackerProfile& a = cfg.attacker;
  if (a.mode != AttackMode::None) {
    require(a.count >= 1, "attacker.count ≥ 1");
    require(a.start_time >= 0.0, "attacker.start_time ≥ 0");
  }
  if (a.mode == AttackMode::Flood) {
    require(a.rate > cfg.cbr_rate, "attacker.rate > cbr_rate");
  }
  if (a.mode == AttackMode::GhostJoin) {
    require(a.ghost_count >= 1, "attacker.ghost_count ≥ 1");
  }
  return v;
}

inline const char* to_string(DetectorKind k) {
  return k == DetectorKind::PSecure ? "psecure" : "baseline";
}

inline const char* to_string(AttackMode m) {
  switch (m) {
    case AttackMode::None: return "none";
    case AttackMode::Flood: return "flood";
    case AttackMode::GhostJoin: return "ghost";
    case AttackMode::FalseInfo: return "falseinfo";
  }
  return "none";
}

inline const char* to_string(PacketKind k) {
  switch (k) {
    case PacketKind::Beacon: return "beacon";
    case PacketKind::JoinRequest: return "join_request";
    case PacketKind::AlertMsg: return "alert";
  }
  return "beacon";
}

}  // namespace vanetsim
