#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <numbers>
#include <vector>

#include "vanetsim/domain.hpp"
#include "vanetsim/rng.hpp"

namespace vanetsim {

// The simulated physical layer: road area, RSRU placement, mobility.
struct RoadModel {
  double area_width = 1000.0;
  double area_height = 1000.0;
  std::vector<Position> rsru_positions;  // default: one unit at the center
  double move_tick = 0.1;

  static RoadModel from_config(const ScenarioConfig& cfg) {
    RoadModel m;
    m.area_width = cfg.area_width;
    m.area_height = cfg.area_height;
    m.rsru_positions = {Position{cfg.area_width / 2.0, cfg.area_height / 2.0}};
    m.move_tick = cfg.move_tick;
    return m;
  }
};

// Inclusive range gate; compares squared distances so exact boundary cases
// (e.g. a 3-4-5 triangle at the range limit) stay exact.
inline bool in_range(const Position& a, const Position& b, double range) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= range * range;
}

namespace detail {

// Folds x back into [0, bound], negating dir on each reflection. Handles
// displacements larger than the area.
inline void reflect_axis(double& x, double bound, double& dir) {
  while (x < 0.0 || x > bound) {
    if (x < 0.0) {
      x = -x;
      dir = -dir;
    } else {
      x = 2.0 * bound - x;
      dir = -dir;
    }
  }
}

}  // namespace detail

// Straight-line step with boundary bounce. Pure kinematics: speed changes
// (the periodic resample) are driven by the simulation clock, not by dt.
inline VehicleState advance_vehicle(VehicleState v, double dt,
                                    const RoadModel& road) {
  v.pos.x += v.speed * v.heading.x * dt;
  v.pos.y += v.speed * v.heading.y * dt;
  detail::reflect_axis(v.pos.x, road.area_width, v.heading.x);
  detail::reflect_axis(v.pos.y, road.area_height, v.heading.y);
  return v;
}

inline Position place_uniform(RngStreams& rng, RngStream s, const RoadModel& road) {
  return Position{rng.uniform(s, 0.0, road.area_width),
                  rng.uniform(s, 0.0, road.area_height)};
}

inline Heading random_heading(RngStreams& rng, RngStream s) {
  const double a = rng.uniform(s, 0.0, 2.0 * std::numbers::pi);
  return Heading{std::cos(a), std::sin(a)};
}

// Legitimate speeds are drawn strictly inside the envelope so an honest
// vehicle can never sit exactly on a detection boundary.
inline double draw_legit_speed(RngStreams& rng, RngStream s,
                               const DetectionParams& d) {
  return rng.uniform_open(s, d.v_min, d.v_max);
}

// Per-hop latency: fixed base plus uniform jitter. The jitter draw is skipped
// entirely when jitter is zero so the stream stays aligned across configs
// that differ only in jitter.
inline double hop_delay(RngStreams& rng, RngStream s, const ScenarioConfig& cfg) {
  double d = cfg.hop_delay_base;
  if (cfg.hop_delay_jitter > 0.0) {
    d += rng.uniform(s, 0.0, cfg.hop_delay_jitter);
  }
  return d;
}

// FIFO receive queue at the RSRU. Capacity covers everything held, including
// a packet currently in service at the front.
class RsruBuffer {
 public:
  explicit RsruBuffer(int capacity) : capacity_(capacity) {}

  // Returns false (a buffer drop) when the queue is full; queue unchanged.
  bool push(const Packet& pkt) {
    if (static_cast<int>(queue_.size()) >= capacity_) {
      return false;
    }
    queue_.push_back(pkt);
    return true;
  }

  const Packet& front() const { return queue_.front(); }
  void pop() { queue_.pop_front(); }
  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  int capacity() const { return capacity_; }

 private:
  std::deque<Packet> queue_;
  int capacity_;
};

}  // namespace vanetsim
