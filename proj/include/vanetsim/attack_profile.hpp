#pragma once

#include <cstdint>
#include <optional>

namespace vanetsim {

enum class AttackMode {
  None,       // no adversary
  Flood,      // high-rate beacon flood aimed at the roadside unit
  GhostJoin,  // forged identities spamming join requests
  FalseInfo,  // low-rate alert messages carrying forged kinematics
};

// Adversary knobs. With mode None every other field is ignored.
struct AttackerProfile {
  AttackMode mode = AttackMode::None;
  int count = 10;              // attacker vehicles
  double rate = 100.0;         // packets/second per attacker (Flood)
  int ghost_count = 10;        // forged identities (GhostJoin)
  double start_time = 0.0;     // seconds; no attack traffic before this
  // Speed written into forged packets. Unset picks the per-mode default
  // (v_max + 5 for Flood, 0 for FalseInfo); honest reports the vehicle's
  // real speed instead, which evades the speed-envelope rules.
  std::optional<double> forged_speed{};
  bool forged_speed_honest = false;

  bool operator==(const AttackerProfile&) const = default;
};

}  // namespace vanetsim
