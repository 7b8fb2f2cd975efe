#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vanetsim/domain.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/metrics.hpp"
#include "vanetsim/simulation.hpp"

namespace vanetsim {

enum class SweepAxis { Duration, Density };

inline const char* to_string(SweepAxis a) {
  return a == SweepAxis::Duration ? "duration" : "density";
}

// One experiment grid: axis values crossed with seeds and detector arms.
// Seeds are paired: both arms replay identical legitimate traffic and
// identical attack schedules for a given seed.
struct SweepSpec {
  SweepAxis axis = SweepAxis::Duration;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<DetectorKind> detectors = {DetectorKind::PSecure,
                                         DetectorKind::Baseline};

  static std::vector<double> default_durations() {
    return {200, 400, 600, 800, 1000, 1200};
  }
  // Vehicle-count sweep in steps of 20, capped at 150.
  static std::vector<double> default_densities() {
    return {20, 40, 60, 80, 100, 120, 140};
  }

  static SweepSpec for_axis(SweepAxis axis) {
    SweepSpec spec;
    spec.axis = axis;
    spec.values = axis == SweepAxis::Duration ? default_durations()
                                              : default_densities();
    return spec;
  }
};

// One CSV row. Metric fields are absent (empty in the CSV) when undefined,
// e.g. mean delay with zero deliveries.
struct MetricsRow {
  std::string scenario = "default";
  DetectorKind detector = DetectorKind::PSecure;
  std::string axis = "none";
  double axis_value = 0.0;
  std::uint64_t seed = 0;
  int density = 0;
  double duration = 0.0;
  AttackMode attack_mode = AttackMode::None;
  double attack_rate = 0.0;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::optional<double> pdr_pct{};
  std::optional<double> drop_frac{};
  std::optional<double> mean_delay_s{};
  std::optional<double> throughput_pps{};
};

inline constexpr const char* kCsvHeader =
    "scenario,detector,axis,axis_value,seed,density,duration,attack_mode,"
    "attack_rate,sent,received,pdr,drop_rate,mean_e2e_delay_s,throughput_pps";

inline std::string to_csv_line(const MetricsRow& r) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
  };
  std::string line;
  line += r.scenario;
  line += ',';
  line += to_string(r.detector);
  line += ',';
  line += r.axis;
  line += ',';
  line += format_double(r.axis_value);
  line += ',';
  line += std::to_string(r.seed);
  line += ',';
  line += std::to_string(r.density);
  line += ',';
  line += format_double(r.duration);
  line += ',';
  line += to_string(r.attack_mode);
  line += ',';
  line += format_double(r.attack_rate);
  line += ',';
  line += std::to_string(r.sent);
  line += ',';
  line += std::to_string(r.received);
  line += ',';
  line += opt(r.pdr_pct);
  line += ',';
  line += opt(r.drop_frac);
  line += ',';
  line += opt(r.mean_delay_s);
  line += ',';
  line += opt(r.throughput_pps);
  return line;
}

inline std::string to_csv(const std::vector<MetricsRow>& rows) {
  std::string doc = kCsvHeader;
  doc += '\n';
  for (const auto& r : rows) {
    doc += to_csv_line(r);
    doc += '\n';
  }
  return doc;
}

inline MetricsRow make_row(const ScenarioConfig& cfg, const RunResult& result,
                           const std::string& scenario, const std::string& axis,
                           double axis_value) {
  MetricsRow row;
  row.scenario = scenario;
  row.detector = cfg.detector;
  row.axis = axis;
  row.axis_value = axis_value;
  row.seed = cfg.seed;
  row.density = cfg.density;
  row.duration = cfg.duration;
  row.attack_mode = cfg.attacker.mode;
  row.attack_rate = cfg.attacker.mode == AttackMode::None ? 0.0 : cfg.attacker.rate;
  row.sent = result.metrics.sent;
  row.received = result.metrics.received;
  row.pdr_pct = pdr(result.metrics);
  row.drop_frac = drop_rate(result.metrics);
  row.mean_delay_s = mean_e2e_delay(result.metrics);
  row.throughput_pps = throughput(result.metrics);
  return row;
}

inline ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis,
                                 double value) {
  if (axis == SweepAxis::Duration) {
    cfg.duration = value;
  } else {
    cfg.density = static_cast<int>(value);
  }
  return cfg;
}

// Runs the grid in deterministic (axis_value, seed, detector) order.
inline std::vector<MetricsRow> run_sweep(const SweepSpec& spec,
                                         const ScenarioConfig& base,
                                         const std::string& scenario = "default",
                                         std::ostream* trace = nullptr) {
  std::vector<MetricsRow> rows;
  rows.reserve(spec.values.size() * spec.seeds.size() * spec.detectors.size());
  for (const double value : spec.values) {
    for (const std::uint64_t seed : spec.seeds) {
      for (const DetectorKind detector : spec.detectors) {
        ScenarioConfig cfg = apply_axis(base, spec.axis, value);
        cfg.seed = seed;
        cfg.detector = detector;
        const RunResult result = run_scenario(cfg, trace);
        rows.push_back(
            make_row(cfg, result, scenario, to_string(spec.axis), value));
      }
    }
  }
  return rows;
}

}  // namespace vanetsim
