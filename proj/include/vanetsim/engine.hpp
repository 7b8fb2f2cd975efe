#pragma once

#include <charconv>
#include <cstdint>
#include <functional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace vanetsim {

enum class EventKind {
  EmitPacket,
  Deliver,
  MoveTick,
  SlotTick,
  AssessTick,
  EndOfRun,
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::EmitPacket: return "emit_packet";
    case EventKind::Deliver: return "deliver";
    case EventKind::MoveTick: return "move_tick";
    case EventKind::SlotTick: return "slot_tick";
    case EventKind::AssessTick: return "assess_tick";
    case EventKind::EndOfRun: return "end_of_run";
  }
  return "unknown";
}

// FNV-1a, used for payload digests in the event trace.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

template <class... Ts>
std::uint64_t digest_of(const Ts&... fields) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  ((h = fnv1a64(&fields, sizeof(fields), h)), ...);
  return h;
}

// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

// One scheduled occurrence. Events execute in (time, tiebreak) order; the
// tiebreak is assigned at scheduling time, so equal-time events run FIFO.
template <class Payload>
struct Event {
  double time = 0.0;
  std::uint64_t tiebreak = 0;
  EventKind kind = EventKind::EndOfRun;
  std::uint64_t digest = 0;
  Payload payload{};
};

// Deterministic discrete-event scheduler. Single-threaded by construction:
// one Simulator drives one run.
template <class Payload>
class Simulator {
 public:
  using EventType = Event<Payload>;
  using Handler = std::function<void(const EventType&)>;

  void set_handler(Handler h) { handler_ = std::move(h); }

  // Optional event-trace sink: one line per executed event,
  // tab-separated "time kind payload-digest", for replay diffing.
  void set_trace(std::ostream* trace) { trace_ = trace; }

  double clock() const { return clock_; }

  void schedule(double time, EventKind kind, std::uint64_t digest, Payload payload) {
    if (time < clock_) {
      throw std::logic_error("schedule into the past: t=" + format_double(time) +
                             " clock=" + format_double(clock_));
    }
    queue_.push(EventType{time, next_tiebreak_++, kind, digest, std::move(payload)});
  }

  // Executes all events with time <= t_end, leaves clock at t_end.
  // Returns the executed event count.
  std::size_t run_until(double t_end) {
    std::size_t executed = 0;
    while (!queue_.empty() && queue_.top().time <= t_end) {
      executed += step();
    }
    clock_ = t_end;
    return executed;
  }

  // Drains every pending event; clock ends at the last event time.
  std::size_t run_all() {
    std::size_t executed = 0;
    while (!queue_.empty()) {
      executed += step();
    }
    return executed;
  }

  std::size_t pending() const { return queue_.size(); }

 private:
  struct Later {
    bool operator()(const EventType& a, const EventType& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.tiebreak > b.tiebreak;
    }
  };

  std::size_t step() {
    EventType ev = queue_.top();
    queue_.pop();
    clock_ = ev.time;
    if (trace_) {
      char hex[17];
      auto [end, ec] = std::to_chars(hex, hex + sizeof(hex), ev.digest, 16);
      (void)ec;
      *trace_ << format_double(ev.time) << '\t' << to_string(ev.kind) << '\t';
      trace_->write(hex, end - hex);
      *trace_ << '\n';
    }
    if (handler_) handler_(ev);
    return 1;
  }

  std::priority_queue<EventType, std::vector<EventType>, Later> queue_;
  Handler handler_;
  std::ostream* trace_ = nullptr;
  double clock_ = 0.0;
  std::uint64_t next_tiebreak_ = 0;
};

}  // namespace vanetsim
