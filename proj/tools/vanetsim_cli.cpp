// Scenario runner: executes a single simulation run or a duration/density
// sweep and writes one CSV row per run. Exit codes: 0 success, 1 config
// error, 2 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vanetsim/vanetsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitIoError = 2;

struct Options {
  std::string config_path;
  std::string sweep_axis;  // "duration" | "density" | ""
  int seeds = 0;           // 0: not given
  std::string detector;    // "psecure" | "baseline" | "both" | ""
  std::string attack;      // "none" | "flood" | "ghost" | "falseinfo" | ""
  std::string out_path;
  std::string trace_path;
};

std::vector<vanetsim::DetectorKind> detector_arms(const Options& opt,
                                                  const vanetsim::ScenarioConfig& cfg,
                                                  bool sweeping) {
  using vanetsim::DetectorKind;
  if (opt.detector == "psecure") return {DetectorKind::PSecure};
  if (opt.detector == "baseline") return {DetectorKind::Baseline};
  if (opt.detector == "both" || sweeping) {
    return {DetectorKind::PSecure, DetectorKind::Baseline};
  }
  return {cfg.detector};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VANET flood-detection simulator"};
  Options opt;

  app.add_option("--config", opt.config_path, "Scenario file (key = value lines)");
  app.add_option("--sweep", opt.sweep_axis, "Sweep axis")
      ->check(CLI::IsMember({"duration", "density"}));
  app.add_option("--seeds", opt.seeds, "Run seeds 1..N")->check(CLI::PositiveNumber);
  app.add_option("--detector", opt.detector, "Detector arm(s)")
      ->check(CLI::IsMember({"psecure", "baseline", "both"}));
  app.add_option("--attack", opt.attack, "Attack mode override")
      ->check(CLI::IsMember({"none", "flood", "ghost", "falseinfo"}));
  app.add_option("--out", opt.out_path, "CSV output path (default: stdout)");
  app.add_option("--trace", opt.trace_path, "Event trace output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  vanetsim::ScenarioConfig cfg;
  std::string scenario_name = "default";
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      std::cerr << "error: cannot read config file: " << opt.config_path << '\n';
      return kExitIoError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const auto parsed = vanetsim::parse_scenario(text.str());
    if (!parsed.errors.empty()) {
      for (const auto& e : parsed.errors) {
        std::cerr << opt.config_path << ": " << e << '\n';
      }
      return kExitConfigError;
    }
    cfg = *parsed.config;
    scenario_name = std::filesystem::path(opt.config_path).stem().string();
  }

  // Flags override file values.
  if (opt.attack == "none") cfg.attacker.mode = vanetsim::AttackMode::None;
  else if (opt.attack == "flood") cfg.attacker.mode = vanetsim::AttackMode::Flood;
  else if (opt.attack == "ghost") cfg.attacker.mode = vanetsim::AttackMode::GhostJoin;
  else if (opt.attack == "falseinfo") cfg.attacker.mode = vanetsim::AttackMode::FalseInfo;

  const auto violations = vanetsim::validate_config(cfg);
  if (!violations.empty()) {
    std::cerr << "invalid configuration:\n";
    for (const auto& v : violations) {
      std::cerr << "  " << v << '\n';
    }
    return kExitConfigError;
  }

  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!opt.trace_path.empty()) {
    trace_file.open(opt.trace_path);
    if (!trace_file) {
      std::cerr << "error: cannot write trace file: " << opt.trace_path << '\n';
      return kExitIoError;
    }
    trace = &trace_file;
  }

  const bool sweeping = !opt.sweep_axis.empty();
  std::vector<vanetsim::MetricsRow> rows;
  if (sweeping) {
    vanetsim::SweepSpec spec = vanetsim::SweepSpec::for_axis(
        opt.sweep_axis == "duration" ? vanetsim::SweepAxis::Duration
                                     : vanetsim::SweepAxis::Density);
    if (opt.seeds > 0) {
      spec.seeds.resize(static_cast<std::size_t>(opt.seeds));
      std::iota(spec.seeds.begin(), spec.seeds.end(), std::uint64_t{1});
    }
    spec.detectors = detector_arms(opt, cfg, true);
    rows = vanetsim::run_sweep(spec, cfg, scenario_name, trace);
  } else {
    std::vector<std::uint64_t> seeds = {cfg.seed};
    if (opt.seeds > 0) {
      seeds.resize(static_cast<std::size_t>(opt.seeds));
      std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
    }
    for (const auto seed : seeds) {
      for (const auto detector : detector_arms(opt, cfg, false)) {
        vanetsim::ScenarioConfig run_cfg = cfg;
        run_cfg.seed = seed;
        run_cfg.detector = detector;
        const auto result = vanetsim::run_scenario(run_cfg, trace);
        rows.push_back(vanetsim::make_row(run_cfg, result, scenario_name,
                                          "none", 0.0));
      }
    }
  }

  const std::string csv = vanetsim::to_csv(rows);
  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    if (!out) {
      std::cerr << "error: cannot write output file: " << opt.out_path << '\n';
      return kExitIoError;
    }
    out << csv;
    if (!out) {
      std::cerr << "error: write failed: " << opt.out_path << '\n';
      return kExitIoError;
    }
  } else {
    std::cout << csv;
  }
  return kExitOk;
}
