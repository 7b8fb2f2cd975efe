#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vanetsim/domain.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/world.hpp"

namespace vanetsim {

// Phase-1 outcome. Exactly one verdict per delivered packet.
enum class Verdict {
  Accept,
  DiscardStale,
  AttackHighRate,
  AttackLowSpeed,
  RejectUnverified,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::DiscardStale: return "discard_stale";
    case Verdict::AttackHighRate: return "attack_high_rate";
    case Verdict::AttackLowSpeed: return "attack_low_speed";
    case Verdict::RejectUnverified: return "reject_unverified";
  }
  return "accept";
}

// Expected per-second packet rate as a function of vehicle speed.
// Pure; non-negative, symmetric about v_max, linear in alpha.
inline double expected_packet_rate(double v, const DetectionParams& params) {
  return params.alpha * std::abs(v - params.v_max) / 2.0;
}

// Sliding window of one sender's arrival timestamps. Entries older than
// rate_window are evicted before any read, so rate() is always current.
class RateHistory {
 public:
  void evict_before(double cutoff) {
    while (!stamps_.empty() && stamps_.front() < cutoff) {
      stamps_.pop_front();
    }
  }

  void record(double t) { stamps_.push_back(t); }

  // Packets per second over the window.
  double rate(double window) const {
    return static_cast<double>(stamps_.size()) / window;
  }

  std::size_t count() const { return stamps_.size(); }

 private:
  std::deque<double> stamps_;
};

enum class VerificationStatus { Pending, Valid, Malicious };

inline const char* to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::Pending: return "pending";
    case VerificationStatus::Valid: return "valid";
    case VerificationStatus::Malicious: return "malicious";
  }
  return "pending";
}

// Per-vehicle admission bookkeeping. Status only ever moves forward:
// Pending -> Valid, Pending -> Malicious, Valid -> Malicious.
struct VerificationRecord {
  VehicleId vehicle_id = 0;
  double admitted_at = 0.0;
  int slot_id = 0;
  std::uint64_t request_count = 0;
  std::uint64_t step_count = 0;
  int last_request_slot = 0;
  VerificationStatus status = VerificationStatus::Pending;
};

enum class AdmitResult { Admitted, RejectUnverified, FlaggedMalicious };

inline const char* to_string(AdmitResult r) {
  switch (r) {
    case AdmitResult::Admitted: return "admitted";
    case AdmitResult::RejectUnverified: return "reject_unverified";
    case AdmitResult::FlaggedMalicious: return "flagged_malicious";
  }
  return "admitted";
}

// The detector's working memory at one RSRU.
struct RsruState {
  std::unordered_map<VehicleId, RateHistory> rate_histories;
  // Ordered so assessment sweeps run in a deterministic vehicle order.
  std::map<VehicleId, VerificationRecord> records;
  std::unordered_set<VehicleId> blocked;
  int current_slot = 0;
  int next_slot_id = 0;
};

// Two-phase admission-control detector. Phase 1 vets each packet on arrival
// by timestamp freshness, observed send rate, and the reported-speed
// envelope; phase 2 governs join admission via slots and request counters.
// Packet vetting itself is treated as free: accepted packets incur only the
// channel delay.
class PSecureDetector {
 public:
  explicit PSecureDetector(const DetectionParams& params) : params_(params) {}

  // Optional audit log: one line per phase-1 decision,
  // tab-separated "time sender verdict p reported_speed".
  void set_verdict_log(std::ostream* log) { log_ = log; }

  // Applies the phase-1 rules in fixed order:
  //   blocked sender           -> RejectUnverified
  //   ts older than threshold  -> DiscardStale (arrival not recorded)
  //   p >= m_max and v >= v_max -> AttackHighRate (sender blocked)
  //   p <= m_max and v <= v_min -> AttackLowSpeed (sender blocked)
  //   otherwise                -> Accept
  // where p is the sender's windowed rate including this arrival. At
  // p == m_max exactly, the high-rate rule wins.
  Verdict phase1_check(const Packet& pkt, double t_recv) {
    RateHistory& hist = state_.rate_histories[pkt.sender];
    hist.evict_before(t_recv - params_.rate_window);

    Verdict verdict;
    double p = hist.rate(params_.rate_window);
    if (state_.blocked.contains(pkt.sender)) {
      verdict = Verdict::RejectUnverified;
    } else if (t_recv - pkt.ts_send > params_.ts_threshold) {
      verdict = Verdict::DiscardStale;
    } else {
      hist.record(t_recv);
      p = hist.rate(params_.rate_window);
      const double v = pkt.reported_speed;
      if (p >= params_.m_max && v >= params_.v_max) {
        verdict = Verdict::AttackHighRate;
        state_.blocked.insert(pkt.sender);
      } else if (p <= params_.m_max && v <= params_.v_min) {
        verdict = Verdict::AttackLowSpeed;
        state_.blocked.insert(pkt.sender);
      } else {
        verdict = Verdict::Accept;
        if (params_.rate_consistency_check &&
            std::abs(p - expected_packet_rate(v, params_)) > params_.rate_slack) {
          ++suspicious_;
        }
      }
    }

    if (log_) {
      *log_ << format_double(t_recv) << '\t' << pkt.sender << '\t'
            << to_string(verdict) << '\t' << format_double(p) << '\t'
            << format_double(pkt.reported_speed) << '\n';
    }
    return verdict;
  }

  struct Admission {
    AdmitResult result;
    int slot_id = -1;
  };

  // Join handling for a packet that already passed phase 1. A fresh sender
  // gets a Pending record and the next free slot; a repeat request inside
  // the sender's last slot flags it malicious on the spot; a repeat in a
  // later slot is admitted again and counted.
  Admission phase2_admit(const Packet& req, double t) {
    auto it = state_.records.find(req.sender);
    if (it == state_.records.end()) {
      VerificationRecord rec;
      rec.vehicle_id = req.sender;
      rec.admitted_at = t;
      rec.slot_id = state_.next_slot_id++;
      rec.request_count = 1;
      rec.step_count = 0;
      rec.last_request_slot = state_.current_slot;
      state_.records.emplace(req.sender, rec);
      return {AdmitResult::Admitted, rec.slot_id};
    }

    VerificationRecord& rec = it->second;
    if (rec.status == VerificationStatus::Malicious) {
      return {AdmitResult::RejectUnverified, -1};
    }
    if (rec.last_request_slot == state_.current_slot) {
      rec.status = VerificationStatus::Malicious;
      state_.blocked.insert(req.sender);
      return {AdmitResult::FlaggedMalicious, -1};
    }
    ++rec.request_count;
    rec.last_request_slot = state_.current_slot;
    return {AdmitResult::Admitted, rec.slot_id};
  }

  // Slot-cadence assessment. First grants Valid to Pending vehicles whose
  // heartbeat count tracks the elapsed slots within step_tolerance, then
  // applies the comparative request-count rule against a snapshot of the
  // busiest non-malicious peers. Returns the ids newly flagged malicious.
  std::vector<VehicleId> phase2_assess(double t) {
    for (auto& [id, rec] : state_.records) {
      if (rec.status != VerificationStatus::Pending) continue;
      const auto expected = static_cast<std::int64_t>(
          std::floor((t - rec.admitted_at) / params_.slot_duration));
      const auto diff = static_cast<std::int64_t>(rec.step_count) - expected;
      if (std::abs(diff) <= params_.step_tolerance) {
        rec.status = VerificationStatus::Valid;
      }
    }

    // Snapshot the two largest request counts before flagging anything, so
    // every vehicle is judged against the same pre-assessment state.
    std::uint64_t max_count = 0;
    std::uint64_t second_count = 0;
    VehicleId max_id = 0;
    for (const auto& [id, rec] : state_.records) {
      if (rec.status == VerificationStatus::Malicious) continue;
      if (rec.request_count > max_count) {
        second_count = max_count;
        max_count = rec.request_count;
        max_id = id;
      } else if (rec.request_count > second_count) {
        second_count = rec.request_count;
      }
    }

    std::vector<VehicleId> flagged;
    for (auto& [id, rec] : state_.records) {
      if (rec.status == VerificationStatus::Malicious) continue;
      const std::uint64_t peer_max = (id == max_id) ? second_count : max_count;
      const double threshold =
          params_.flood_factor * static_cast<double>(std::max<std::uint64_t>(peer_max, 1));
      if (static_cast<double>(rec.request_count) > threshold) {
        rec.status = VerificationStatus::Malicious;
        state_.blocked.insert(id);
        flagged.push_back(id);
      }
    }
    return flagged;
  }

  // One accepted packet from an admitted vehicle counts as one step.
  void heartbeat(VehicleId id) {
    auto it = state_.records.find(id);
    if (it != state_.records.end() &&
        it->second.status != VerificationStatus::Malicious) {
      ++it->second.step_count;
    }
  }

  void on_slot_tick() { ++state_.current_slot; }

  bool blocked(VehicleId id) const { return state_.blocked.contains(id); }

  const VerificationRecord* record(VehicleId id) const {
    auto it = state_.records.find(id);
    return it == state_.records.end() ? nullptr : &it->second;
  }

  int current_slot() const { return state_.current_slot; }
  int suspicious_count() const { return suspicious_; }
  const RsruState& state() const { return state_; }

 private:
  DetectionParams params_;
  RsruState state_;
  std::ostream* log_ = nullptr;
  int suspicious_ = 0;
};

// Confirm-time baseline. Every arriving packet waits in the FIFO receive
// buffer and occupies a single work-conserving server for verify_delay
// seconds; only after verification are attacker packets discarded. Floods
// therefore consume buffer space and service capacity before detection.
class BaselineVerifier {
 public:
  BaselineVerifier(int buffer_capacity, double verify_delay)
      : buffer_(buffer_capacity), verify_delay_(verify_delay) {}

  struct Enqueue {
    bool accepted = false;                    // false: buffer drop
    std::optional<double> completes_at{};     // engaged iff service started now
  };

  // The in-service packet stays at the queue front and counts against
  // capacity until its verification completes.
  Enqueue on_packet(const Packet& pkt, double t) {
    if (!buffer_.push(pkt)) {
      return {false, std::nullopt};
    }
    if (!busy_) {
      busy_ = true;
      return {true, t + verify_delay_};
    }
    return {true, std::nullopt};
  }

  struct Completion {
    Packet done;
    std::optional<double> next_completes_at{};  // engaged iff queue nonempty
  };

  Completion on_service_complete(double t) {
    Completion c{buffer_.front(), std::nullopt};
    buffer_.pop();
    if (!buffer_.empty()) {
      c.next_completes_at = t + verify_delay_;
    } else {
      busy_ = false;
    }
    return c;
  }

  // The packet currently being verified (valid only while busy).
  const Packet& in_service() const { return buffer_.front(); }

  std::size_t queue_length() const { return buffer_.size(); }
  bool busy() const { return busy_; }

 private:
  RsruBuffer buffer_;
  double verify_delay_;
  bool busy_ = false;
};

}  // namespace vanetsim
