#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace vanetsim {

// Counters and delay samples for one run. All counts refer to legitimate
// application packets only; attacker traffic is tracked separately and never
// enters the delivery ratios.
struct MetricsAccumulator {
  std::uint64_t sent = 0;           // legitimate packets emitted
  std::uint64_t received = 0;       // legitimate packets delivered past the detector
  std::uint64_t range_drops = 0;    // emitted outside RSRU range
  std::uint64_t buffer_drops = 0;   // arrivals at a full receive buffer
  std::uint64_t verdict_drops = 0;  // discarded by a detector decision
  std::vector<double> delay_samples;  // receive_time - ts_send per delivery
  std::uint64_t requests_done = 0;  // deliveries counted for throughput
  double elapsed = 0.0;             // seconds of simulated time

  // Attacker-side bookkeeping, not part of the delivery metrics.
  std::uint64_t attacker_sent = 0;
  std::uint64_t attacker_discarded = 0;
  std::uint64_t attacker_delivered = 0;  // slipped through before flagging

  void on_sent() { ++sent; }

  void on_delivered(double delay) {
    ++received;
    ++requests_done;
    delay_samples.push_back(delay);
  }

  void on_range_drop() { ++range_drops; }
  void on_buffer_drop() { ++buffer_drops; }
  void on_verdict_drop() { ++verdict_drops; }

  // Packets emitted but not yet accounted for. Zero once the run drains.
  std::int64_t in_flight() const {
    return static_cast<std::int64_t>(sent) -
           static_cast<std::int64_t>(received + range_drops + buffer_drops +
                                     verdict_drops);
  }

  bool conserved_at_drain() const { return in_flight() == 0; }
};

// Delivery ratio in percent. Undefined (absent) when nothing was sent.
inline std::optional<double> pdr(const MetricsAccumulator& acc) {
  if (acc.sent == 0) return std::nullopt;
  return 100.0 * static_cast<double>(acc.received) / static_cast<double>(acc.sent);
}

// Dropped fraction in [0,1]. Computed as 1 - pdr/100 so the complement
// identity with pdr holds bit-exactly on every emitted row.
inline std::optional<double> drop_rate(const MetricsAccumulator& acc) {
  auto p = pdr(acc);
  if (!p) return std::nullopt;
  return 1.0 - *p / 100.0;
}

inline std::optional<double> mean_e2e_delay(const MetricsAccumulator& acc) {
  if (acc.delay_samples.empty()) return std::nullopt;
  const double sum =
      std::accumulate(acc.delay_samples.begin(), acc.delay_samples.end(), 0.0);
  return sum / static_cast<double>(acc.delay_samples.size());
}

// Completed requests per second of simulated time.
inline std::optional<double> throughput(const MetricsAccumulator& acc) {
  if (acc.elapsed <= 0.0) return std::nullopt;
  return static_cast<double>(acc.requests_done) / acc.elapsed;
}

}  // namespace vanetsim
