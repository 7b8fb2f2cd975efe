#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vanetsim/domain.hpp"
#include "vanetsim/engine.hpp"

namespace vanetsim {

// Scenario files are flat UTF-8 "key = value" text: one assignment per
// line, '#' starts a comment, keys are the config field names with dotted
// prefixes for the attacker and detection sub-structures.

struct ParseResult {
  std::optional<ScenarioConfig> config;  // engaged iff errors is empty
  std::vector<std::string> errors;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool parse_bool(std::string_view s, bool& out) {
  if (s == "true") { out = true; return true; }
  if (s == "false") { out = false; return true; }
  return false;
}

inline bool parse_detector(std::string_view s, DetectorKind& out) {
  if (s == "psecure") { out = DetectorKind::PSecure; return true; }
  if (s == "baseline") { out = DetectorKind::Baseline; return true; }
  return false;
}

inline bool parse_attack_mode(std::string_view s, AttackMode& out) {
  if (s == "none") { out = AttackMode::None; return true; }
  if (s == "flood") { out = AttackMode::Flood; return true; }
  if (s == "ghost") { out = AttackMode::GhostJoin; return true; }
  if (s == "falseinfo") { out = AttackMode::FalseInfo; return true; }
  return false;
}

}  // namespace detail

inline ParseResult parse_scenario(std::string_view text,
                                  ScenarioConfig base = ScenarioConfig{}) {
  using namespace detail;
  ParseResult result;
  ScenarioConfig cfg = base;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      result.errors.push_back("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
      continue;
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      result.errors.push_back("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
      continue;
    }

    bool ok = true;
    if (key == "area_width") ok = parse_double(val, cfg.area_width);
    else if (key == "area_height") ok = parse_double(val, cfg.area_height);
    else if (key == "tx_range") ok = parse_double(val, cfg.tx_range);
    else if (key == "density") ok = parse_int(val, cfg.density);
    else if (key == "duration") ok = parse_double(val, cfg.duration);
    else if (key == "seed") ok = parse_u64(val, cfg.seed);
    else if (key == "detector") ok = parse_detector(val, cfg.detector);
    else if (key == "cbr_rate") ok = parse_double(val, cfg.cbr_rate);
    else if (key == "buffer_capacity") ok = parse_int(val, cfg.buffer_capacity);
    else if (key == "hop_delay_base") ok = parse_double(val, cfg.hop_delay_base);
    else if (key == "hop_delay_jitter") ok = parse_double(val, cfg.hop_delay_jitter);
    else if (key == "verify_delay") ok = parse_double(val, cfg.verify_delay);
    else if (key == "move_tick") ok = parse_double(val, cfg.move_tick);
    else if (key == "speed_resample_interval")
      ok = parse_double(val, cfg.speed_resample_interval);
    else if (key == "attacker.mode") ok = parse_attack_mode(val, cfg.attacker.mode);
    else if (key == "attacker.count") ok = parse_int(val, cfg.attacker.count);
    else if (key == "attacker.rate") ok = parse_double(val, cfg.attacker.rate);
    else if (key == "attacker.ghost_count")
      ok = parse_int(val, cfg.attacker.ghost_count);
    else if (key == "attacker.start_time")
      ok = parse_double(val, cfg.attacker.start_time);
    else if (key == "attacker.forged_speed") {
      if (val == "honest") {
        cfg.attacker.forged_speed_honest = true;
        cfg.attacker.forged_speed.reset();
      } else {
        double speed = 0.0;
        ok = parse_double(val, speed);
        if (ok) {
          cfg.attacker.forged_speed = speed;
          cfg.attacker.forged_speed_honest = false;
        }
      }
    }
    else if (key == "detection.m_max") ok = parse_double(val, cfg.detection.m_max);
    else if (key == "detection.alpha") ok = parse_double(val, cfg.detection.alpha);
    else if (key == "detection.v_max") ok = parse_double(val, cfg.detection.v_max);
    else if (key == "detection.v_min") ok = parse_double(val, cfg.detection.v_min);
    else if (key == "detection.ts_threshold")
      ok = parse_double(val, cfg.detection.ts_threshold);
    else if (key == "detection.rate_window")
      ok = parse_double(val, cfg.detection.rate_window);
    else if (key == "detection.slot_duration")
      ok = parse_double(val, cfg.detection.slot_duration);
    else if (key == "detection.flood_factor")
      ok = parse_double(val, cfg.detection.flood_factor);
    else if (key == "detection.step_tolerance")
      ok = parse_int(val, cfg.detection.step_tolerance);
    else if (key == "detection.rate_consistency_check")
      ok = parse_bool(val, cfg.detection.rate_consistency_check);
    else if (key == "detection.rate_slack")
      ok = parse_double(val, cfg.detection.rate_slack);
    else if (key == "detection.speed_from_positions")
      ok = parse_bool(val, cfg.detection.speed_from_positions);
    else {
      result.errors.push_back("line " + std::to_string(line_no) +
                              ": unknown key '" + std::string(key) + "'");
      continue;
    }
    if (!ok) {
      result.errors.push_back("line " + std::to_string(line_no) +
                              ": invalid value for '" + std::string(key) +
                              "'");
    }
  }

  if (result.errors.empty()) {
    result.config = cfg;
  }
  return result;
}

// Emits every field; parse(serialize(cfg)) reproduces cfg exactly (doubles
// are written in shortest round-trip form).
inline std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  const auto put = [&out](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  const auto put_d = [&put](const char* key, double v) {
    put(key, format_double(v));
  };

  put_d("area_width", cfg.area_width);
  put_d("area_height", cfg.area_height);
  put_d("tx_range", cfg.tx_range);
  put("density", std::to_string(cfg.density));
  put_d("duration", cfg.duration);
  put("seed", std::to_string(cfg.seed));
  put("detector", to_string(cfg.detector));
  put_d("cbr_rate", cfg.cbr_rate);
  put("buffer_capacity", std::to_string(cfg.buffer_capacity));
  put_d("hop_delay_base", cfg.hop_delay_base);
  put_d("hop_delay_jitter", cfg.hop_delay_jitter);
  put_d("verify_delay", cfg.verify_delay);
  put_d("move_tick", cfg.move_tick);
  put_d("speed_resample_interval", cfg.speed_resample_interval);

  put("attacker.mode", to_string(cfg.attacker.mode));
  put("attacker.count", std::to_string(cfg.attacker.count));
  put_d("attacker.rate", cfg.attacker.rate);
  put("attacker.ghost_count", std::to_string(cfg.attacker.ghost_count));
  put_d("attacker.start_time", cfg.attacker.start_time);
  if (cfg.attacker.forged_speed_honest) {
    put("attacker.forged_speed", "honest");
  } else if (cfg.attacker.forged_speed) {
    put_d("attacker.forged_speed", *cfg.attacker.forged_speed);
  }

  put_d("detection.m_max", cfg.detection.m_max);
  put_d("detection.alpha", cfg.detection.alpha);
  put_d("detection.v_max", cfg.detection.v_max);
  put_d("detection.v_min", cfg.detection.v_min);
  put_d("detection.ts_threshold", cfg.detection.ts_threshold);
  put_d("detection.rate_window", cfg.detection.rate_window);
  put_d("detection.slot_duration", cfg.detection.slot_duration);
  put_d("detection.flood_factor", cfg.detection.flood_factor);
  put("detection.step_tolerance", std::to_string(cfg.detection.step_tolerance));
  put("detection.rate_consistency_check",
      cfg.detection.rate_consistency_check ? "true" : "false");
  put_d("detection.rate_slack", cfg.detection.rate_slack);
  put("detection.speed_from_positions",
      cfg.detection.speed_from_positions ? "true" : "false");
  return out.str();
}

}  // namespace vanetsim
