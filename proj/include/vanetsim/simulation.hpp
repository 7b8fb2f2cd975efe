#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "vanetsim/attack.hpp"
#include "vanetsim/attack_profile.hpp"
#include "vanetsim/detectors.hpp"
#include "vanetsim/domain.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/metrics.hpp"
#include "vanetsim/rng.hpp"
#include "vanetsim/world.hpp"

namespace vanetsim {

// Event payload shared by every event kind. EmitPacket carries the emitting
// vehicle id; Deliver carries the packet, with verify_done marking a
// baseline verification completion rather than a channel arrival.
struct SimPayload {
  VehicleId vehicle = 0;
  Packet pkt{};
  bool verify_done = false;
};

struct RunResult {
  MetricsAccumulator metrics;
  std::vector<VehicleId> flagged_malicious;  // admission-control flags, in order
  int suspicious = 0;
  std::size_t executed_events = 0;
};

// One complete simulation run: builds the world from the config, drives the
// event loop to the configured duration, then drains in-flight packets so
// the conservation identity closes exactly.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg)
      : cfg_(cfg),
        rng_(cfg.seed),
        road_(RoadModel::from_config(cfg)),
        rsru_(road_.rsru_positions.front()) {}

  RunResult run(std::ostream* trace = nullptr,
                std::ostream* verdict_log = nullptr) {
    sim_.set_trace(trace);
    if (cfg_.detector == DetectorKind::PSecure) {
      detector_.emplace(cfg_.detection);
      detector_->set_verdict_log(verdict_log);
    } else {
      verifier_.emplace(cfg_.buffer_capacity, cfg_.verify_delay);
    }
    acc_.elapsed = cfg_.duration;
    resample_every_ = std::max<std::int64_t>(
        1, std::llround(cfg_.speed_resample_interval / cfg_.move_tick));

    init_vehicles();
    sim_.set_handler([this](const Ev& ev) { handle(ev); });
    schedule_initial();

    RunResult result;
    result.executed_events = sim_.run_until(cfg_.duration);
    result.executed_events += sim_.run_all();  // drain in-flight packets
    result.metrics = acc_;
    result.flagged_malicious = flagged_;
    result.suspicious = detector_ ? detector_->suspicious_count() : 0;
    return result;
  }

  const std::vector<VehicleState>& vehicles() const { return legit_; }
  const PSecureDetector* detector() const {
    return detector_ ? &*detector_ : nullptr;
  }

 private:
  using Ev = Event<SimPayload>;

  void init_vehicles() {
    legit_.reserve(static_cast<std::size_t>(cfg_.density));
    for (int i = 0; i < cfg_.density; ++i) {
      VehicleState v;
      v.id = static_cast<VehicleId>(i + 1);
      v.pos = place_uniform(rng_, RngStream::Mobility, road_);
      v.heading = random_heading(rng_, RngStream::Mobility);
      v.speed = draw_legit_speed(rng_, RngStream::Mobility, cfg_.detection);
      legit_.push_back(v);
    }
    attackers_ = make_attackers(cfg_.attacker, rsru_, cfg_.tx_range, rng_);
  }

  void schedule_initial() {
    scan_joins(0.0);

    // Beacon start offsets spread emissions across one beacon period.
    const double period = 1.0 / cfg_.cbr_rate;
    for (const auto& v : legit_) {
      const double offset = rng_.uniform(RngStream::Mobility, 0.0, period);
      if (offset < cfg_.duration) {
        sim_.schedule(offset, EventKind::EmitPacket, digest_of(v.id),
                      SimPayload{.vehicle = v.id});
      }
    }

    if (cfg_.move_tick < cfg_.duration) {
      sim_.schedule(cfg_.move_tick, EventKind::MoveTick, digest_of(move_count_),
                    SimPayload{});
    }
    if (detector_ && cfg_.detection.slot_duration < cfg_.duration) {
      sim_.schedule(cfg_.detection.slot_duration, EventKind::SlotTick,
                    digest_of(slot_count_), SimPayload{});
      sim_.schedule(cfg_.detection.slot_duration, EventKind::AssessTick,
                    digest_of(assess_count_), SimPayload{});
    }

    // Each adversary identity starts at its own random phase within one
    // emission interval; lockstep senders would collide with each other at
    // the receive buffer instead of displacing legitimate traffic.
    const AttackerProfile& att = cfg_.attacker;
    const double interval =
        attack_emit_interval(att, cfg_.cbr_rate, cfg_.detection.slot_duration);
    if (att.mode == AttackMode::Flood || att.mode == AttackMode::FalseInfo) {
      for (const auto& a : attackers_) {
        const double start =
            att.start_time + rng_.uniform(RngStream::Attacker, 0.0, interval);
        if (start < cfg_.duration) {
          sim_.schedule(start, EventKind::EmitPacket, digest_of(a.id),
                        SimPayload{.vehicle = a.id});
        }
      }
    } else if (att.mode == AttackMode::GhostJoin && !attackers_.empty()) {
      for (int g = 0; g < att.ghost_count; ++g) {
        const VehicleId id = kGhostIdBase + static_cast<VehicleId>(g);
        const double start =
            att.start_time + rng_.uniform(RngStream::Attacker, 0.0, interval);
        if (start < cfg_.duration) {
          sim_.schedule(start, EventKind::EmitPacket, digest_of(id),
                        SimPayload{.vehicle = id});
        }
      }
    }

    sim_.schedule(cfg_.duration, EventKind::EndOfRun, digest_of(std::uint64_t{0}),
                  SimPayload{});
  }

  void handle(const Ev& ev) {
    switch (ev.kind) {
      case EventKind::EmitPacket: on_emit(ev); break;
      case EventKind::Deliver: on_deliver(ev); break;
      case EventKind::MoveTick: on_move_tick(ev.time); break;
      case EventKind::SlotTick: on_slot_tick(ev.time); break;
      case EventKind::AssessTick: on_assess_tick(ev.time); break;
      case EventKind::EndOfRun: break;
    }
  }

  std::uint64_t& next_seq(VehicleId id) { return seq_[id]; }

  void on_emit(const Ev& ev) {
    const double t = ev.time;
    if (t >= cfg_.duration) return;
    const VehicleId id = ev.payload.vehicle;

    if (id >= kGhostIdBase) {
      const auto idx = static_cast<std::size_t>(id - kGhostIdBase);
      const Position& from = attackers_[idx % attackers_.size()].pos;
      Packet pkt = ghost_packet(id, from, cfg_.detection, next_seq(id)++, t);
      ++acc_.attacker_sent;
      transmit(pkt, from, t, true);
      reschedule_attack_emit(id, t);
      return;
    }
    if (id >= kAttackerIdBase) {
      const auto& a = attackers_[static_cast<std::size_t>(id - kAttackerIdBase)];
      Packet pkt = cfg_.attacker.mode == AttackMode::Flood
                       ? flood_packet(a, cfg_.attacker, cfg_.detection,
                                      next_seq(id)++, t)
                       : false_info_packet(a, cfg_.attacker, next_seq(id)++, t);
      ++acc_.attacker_sent;
      transmit(pkt, a.pos, t, true);
      reschedule_attack_emit(id, t);
      return;
    }

    const VehicleState& v = legit_[static_cast<std::size_t>(id - 1)];
    Packet pkt;
    pkt.seq = next_seq(id)++;
    pkt.sender = id;
    pkt.kind = PacketKind::Beacon;
    pkt.reported_speed = v.speed;
    pkt.reported_pos = v.pos;
    pkt.ts_send = t;
    acc_.on_sent();
    transmit(pkt, v.pos, t, false);

    const double next = t + 1.0 / cfg_.cbr_rate;
    if (next < cfg_.duration) {
      sim_.schedule(next, EventKind::EmitPacket, digest_of(id),
                    SimPayload{.vehicle = id});
    }
  }

  void reschedule_attack_emit(VehicleId id, double t) {
    const double next = t + attack_emit_interval(cfg_.attacker, cfg_.cbr_rate,
                                                 cfg_.detection.slot_duration);
    if (next < cfg_.duration) {
      sim_.schedule(next, EventKind::EmitPacket, digest_of(id),
                    SimPayload{.vehicle = id});
    }
  }

  void transmit(const Packet& pkt, const Position& from, double t,
                bool attacker) {
    if (in_range(from, rsru_, cfg_.tx_range)) {
      const double delay = hop_delay(
          rng_, attacker ? RngStream::AttackerChannel : RngStream::Channel,
          cfg_);
      sim_.schedule(t + delay, EventKind::Deliver,
                    digest_of(pkt.sender, pkt.seq),
                    SimPayload{.pkt = pkt});
    } else if (attacker) {
      ++acc_.attacker_discarded;
    } else {
      acc_.on_range_drop();
    }
  }

  void on_deliver(const Ev& ev) {
    if (ev.payload.verify_done) {
      on_verify_done(ev.time);
      return;
    }
    const Packet& pkt = ev.payload.pkt;
    const double t = ev.time;
    if (detector_) {
      const Verdict verdict = detector_->phase1_check(pkt, t);
      const bool attacker = is_attacker_id(pkt.sender);
      if (verdict != Verdict::Accept) {
        attacker ? void(++acc_.attacker_discarded) : acc_.on_verdict_drop();
        return;
      }
      detector_->heartbeat(pkt.sender);
      if (pkt.kind == PacketKind::JoinRequest) {
        const auto adm = detector_->phase2_admit(pkt, t);
        if (adm.result != AdmitResult::Admitted) {
          if (adm.result == AdmitResult::FlaggedMalicious) {
            flagged_.push_back(pkt.sender);
          }
          attacker ? void(++acc_.attacker_discarded) : acc_.on_verdict_drop();
          return;
        }
      }
      deliver(pkt, t, attacker);
    } else {
      const auto enq = verifier_->on_packet(pkt, t);
      if (!enq.accepted) {
        is_attacker_id(pkt.sender) ? void(++acc_.attacker_discarded)
                                   : acc_.on_buffer_drop();
        return;
      }
      if (enq.completes_at) {
        schedule_verify_done(*enq.completes_at, pkt);
      }
    }
  }

  void on_verify_done(double t) {
    const auto completion = verifier_->on_service_complete(t);
    deliver(completion.done, t, is_attacker_id(completion.done.sender));
    if (completion.next_completes_at) {
      schedule_verify_done(*completion.next_completes_at,
                           verifier_->in_service());
    }
  }

  void schedule_verify_done(double at, const Packet& pkt) {
    sim_.schedule(at, EventKind::Deliver,
                  digest_of(pkt.sender, pkt.seq, std::uint64_t{1}),
                  SimPayload{.pkt = pkt, .verify_done = true});
  }

  // Counting point: a packet is delivered once it clears its detector.
  // Attacker traffic is discarded from the baseline's output and excluded
  // from the delivery metrics either way.
  void deliver(const Packet& pkt, double t, bool attacker) {
    if (attacker) {
      if (detector_) {
        ++acc_.attacker_delivered;  // slipped past phase 1 before flagging
      } else {
        ++acc_.attacker_discarded;  // identified at confirmation
      }
      return;
    }
    acc_.on_delivered(t - pkt.ts_send);
  }

  void on_move_tick(double t) {
    ++move_count_;
    for (auto& v : legit_) {
      v = advance_vehicle(v, cfg_.move_tick, road_);
    }
    if (move_count_ % resample_every_ == 0) {
      for (auto& v : legit_) {
        v.speed = draw_legit_speed(rng_, RngStream::Mobility, cfg_.detection);
      }
    }
    scan_joins(t);
    const double next = t + cfg_.move_tick;
    if (next < cfg_.duration) {
      sim_.schedule(next, EventKind::MoveTick, digest_of(move_count_),
                    SimPayload{});
    }
  }

  // A vehicle asks to join the first time it finds itself inside RSRU range.
  void scan_joins(double t) {
    for (auto& v : legit_) {
      if (v.admitted || !in_range(v.pos, rsru_, cfg_.tx_range)) continue;
      v.admitted = true;
      Packet pkt;
      pkt.seq = next_seq(v.id)++;
      pkt.sender = v.id;
      pkt.kind = PacketKind::JoinRequest;
      pkt.reported_speed = v.speed;
      pkt.reported_pos = v.pos;
      pkt.ts_send = t;
      acc_.on_sent();
      transmit(pkt, v.pos, t, false);
    }
  }

  void on_slot_tick(double t) {
    ++slot_count_;
    detector_->on_slot_tick();
    const double next = t + cfg_.detection.slot_duration;
    if (next < cfg_.duration) {
      sim_.schedule(next, EventKind::SlotTick, digest_of(slot_count_),
                    SimPayload{});
    }
  }

  void on_assess_tick(double t) {
    ++assess_count_;
    auto newly = detector_->phase2_assess(t);
    flagged_.insert(flagged_.end(), newly.begin(), newly.end());
    const double next = t + cfg_.detection.slot_duration;
    if (next < cfg_.duration) {
      sim_.schedule(next, EventKind::AssessTick, digest_of(assess_count_),
                    SimPayload{});
    }
  }

  ScenarioConfig cfg_;
  RngStreams rng_;
  RoadModel road_;
  Position rsru_;
  Simulator<SimPayload> sim_;
  std::vector<VehicleState> legit_;
  std::vector<VehicleState> attackers_;
  std::optional<PSecureDetector> detector_;
  std::optional<BaselineVerifier> verifier_;
  MetricsAccumulator acc_;
  std::vector<VehicleId> flagged_;
  std::unordered_map<VehicleId, std::uint64_t> seq_;
  std::int64_t move_count_ = 0;
  std::int64_t resample_every_ = 100;
  std::uint64_t slot_count_ = 0;
  std::uint64_t assess_count_ = 0;
};

inline RunResult run_scenario(const ScenarioConfig& cfg,
                              std::ostream* trace = nullptr,
                              std::ostream* verdict_log = nullptr) {
  Simulation sim(cfg);
  return sim.run(trace, verdict_log);
}

}  // namespace vanetsim
