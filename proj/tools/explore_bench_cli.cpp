// explore-bench: batch runner and single-mission driver.

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "explore_bench/batch.hpp"
#include "explore_bench/config.hpp"
#include "explore_bench/envmap.hpp"
#include "explore_bench/mission.hpp"
#include "explore_bench/reports.hpp"

namespace fs = std::filesystem;
using namespace explore;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

// "section.key=value" overrides on top of a config's mission settings.
void apply_overrides(MissionConfig& config, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      throw ConfigError(fmt::format("override '{}' is not section.key=value", o));
    }
    apply_setting(config, o.substr(0, dot), o.substr(dot + 1, eq - dot - 1), o.substr(eq + 1));
  }
}

void write_mission_files(const fs::path& dir, const std::string& id, const MissionOutput& out, bool traces,
                         bool snapshots) {
  if (traces) {
    fs::create_directories(dir / "traces");
    std::ofstream f(dir / "traces" / (id + ".csv"), std::ios::binary);
    write_trace_csv(f, out.result);
  }
  if (snapshots) {
    fs::create_directories(dir / "snapshots");
    for (const BeliefSnapshot& s : out.snapshots) {
      write_text(dir / "snapshots" / fmt::format("{}_t{:06.0f}.pgm", id, s.time), s.pgm);
    }
  }
}

void print_kpis(const MissionResult& r, const KpiReport& k) {
  fmt::print("status      {} ({})\n", status_name(r.status), r.detail);
  fmt::print("Ec          {:.2f} m\n", k.ec);
  fmt::print("Tt          {:.2f} min\n", k.tt);
  fmt::print("Ef          {:.2f} m^2/m{}\n", k.ef, k.ef_undefined ? " (undefined: no travel)" : "");
  fmt::print("Bl          {:.2f} %\n", k.bl);
  fmt::print("Mc          {:.4f} (free only {:.4f})\n", k.mc, k.mc_free);
  fmt::print("success     {}\n", k.success ? "yes" : "no");
  fmt::print("decisions   {}, blacklisted goals {}, compute ops {}\n", r.decisions, r.blacklisted_goals,
             r.compute_ops);
  fmt::print("mean speed  {:.3f} m/s, min clearance {:.3f} m\n", r.sim_time > 0 ? k.ec / r.sim_time : 0.0,
             r.min_truth_clearance);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads,
            const std::vector<std::string>& overrides) {
  ExperimentConfig config = load_experiment_config(config_path);
  apply_overrides(config.mission, overrides);
  if (threads >= 0) config.threads = static_cast<unsigned>(threads);
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  BatchOptions options;
  options.sink = [&](const MissionRecord& rec) {
    write_mission_files(dir, rec.id(), rec.output, config.write_traces, config.write_snapshots);
    fmt::print(stderr, "{:<32} {:<20} Ec {:7.2f} m  Tt {:6.2f} min  Mc {:.3f}  Bl {:5.1f}%\n", rec.id(),
               status_name(rec.output.result.status), rec.kpis.ec, rec.kpis.tt, rec.kpis.mc, rec.kpis.bl);
  };
  const BatchResult batch = run_batch(config, options);
  write_batch_tables(dir, batch);

  fmt::print("{:<14} {:>5} {:<5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>5}\n", "environment", "entry", "strat",
             "Ec [m]", "Tt [min]", "Ef", "Bl [%]", "Mc", "Ms");
  for (const AggregateRecord& a : batch.aggregates) {
    fmt::print("{:<14} {:>5} {:<5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>5}\n", a.environment, a.entry_index,
               strategy_name(a.strategy), format_mean_std(a.row.ec), format_mean_std(a.row.tt),
               format_mean_std(a.row.ef), format_mean_std(a.row.bl), format_mean_std(a.row.mc, 2), a.row.ms());
  }
  fmt::print("wrote {} missions to {}\n", batch.missions.size(), dir.string());
  return 0;
}

int cmd_mission(const std::string& map_path, const std::string& entry_text, const std::string& strategy_text,
                std::uint64_t seed, const std::string& config_path, const std::string& out_dir,
                const std::vector<std::string>& overrides) {
  const auto strategy = parse_strategy(strategy_text);
  if (!strategy) throw ConfigError(fmt::format("unknown strategy '{}'", strategy_text));
  MissionConfig config;
  if (!config_path.empty()) {
    // Only the module sections of the file matter here; it still needs an [env:...] section.
    config = load_experiment_config(config_path).mission;
  }
  apply_overrides(config, overrides);
  const GroundTruthMap map = load_map_file(map_path);
  const WorldPoint entry = entry_text.empty() ? map.entry_points().at(0) : parse_point(entry_text);

  const MissionOutput out = run_mission(map, entry, *strategy, seed, config);
  const KpiReport k = compute_kpis(out.result, map, config.mc_success_threshold);
  fmt::print("mission     {} from ({}, {}) with {} seed {}\n", map.name(), entry.x, entry.y, strategy_text, seed);
  print_kpis(out.result, k);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const std::string id = fmt::format("{}_{}_s{}", map.name(), strategy_text, seed);
    write_mission_files(out_dir, id, out, true, true);
    fmt::print("wrote trace and snapshots to {}\n", out_dir);
  }
  return 0;
}

int cmd_validate(const std::string& map_path) {
  try {
    const GroundTruthMap map = load_map_file(map_path);
    const GridGeometry& g = map.geometry();
    fmt::print("{}: {}x{} cells at {} m ({:.1f} x {:.1f} m), origin ({}, {})\n", map.name(), g.width(), g.height(),
               g.resolution(), g.max_x() - g.min_x(), g.max_y() - g.min_y(), g.origin().x, g.origin().y);
    fmt::print("free area   {:.2f} m^2\n", map.total_free_area());
    const bool connected = free_space_connected(map);
    fmt::print("connected   {}\n", connected ? "yes" : "no");
    for (const WorldPoint& e : map.entry_points()) {
      fmt::print("entry       ({}, {}) clearance {:.2f} m\n", e.x, e.y, distance_to_nearest_obstacle(map, e, 5.0));
    }
    fmt::print("rooms       {}\n", count_rooms(map, 0.45));
    return connected ? 0 : 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "invalid map: {}\n", e.what());
    return 1;
  }
}

int cmd_calibrate(double capacity, double endurance, double failsafe, const std::string& map_path,
                  const std::string& strategy_text, const std::vector<std::string>& overrides) {
  MissionConfig config;
  config.battery.capacity = capacity;
  config.battery.failsafe_percent = failsafe;
  config.battery.hover_current = calibrated_hover_current(capacity, endurance, failsafe);
  apply_overrides(config, overrides);
  const BatteryParams& p = config.battery;
  fmt::print("hover current        {:.4f} A  (Q {} Ah, {} min to {}%)\n", p.hover_current, p.capacity, endurance,
             p.failsafe_percent);

  BatteryState hover(p);
  const double dt = 0.1;
  std::size_t steps = 0;
  while (!failsafe_triggered(hover)) {
    hover.discharge(p.hover_current, dt);
    ++steps;
  }
  fmt::print("hover-only endurance {:.3f} min (voltage at fail-safe {:.4f} V)\n", steps * dt / 60.0, hover.voltage());

  if (!map_path.empty()) {
    const auto strategy = parse_strategy(strategy_text);
    if (!strategy) throw ConfigError(fmt::format("unknown strategy '{}'", strategy_text));
    const GroundTruthMap map = load_map_file(map_path);
    const MissionOutput out = run_mission(map, map.entry_points().at(0), *strategy, 1, config);
    const MissionResult& r = out.result;
    const double hover_ah = p.hover_current * r.sim_time / 3600.0;
    const double used = r.battery_final.discharged_ah();
    fmt::print("mission {} / {}: {:.1f} s, used {:.5f} Ah vs hover-only {:.5f} Ah -> {:+.1f}%\n", map.name(),
               strategy_text, r.sim_time, used, hover_ah, hover_ah > 0 ? 100.0 * (used / hover_ah - 1.0) : 0.0);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic 2D indoor exploration simulator and benchmark harness"};
  app.require_subcommand(1);

  std::vector<std::string> overrides;

  auto* run = app.add_subcommand("run", "Run a batch experiment from a config file");
  std::string config_path;
  std::string out_dir;
  int threads = -1;
  run->add_option("--config", config_path, "Experiment config (INI)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads (0: one per hardware thread)");
  run->add_option("--set", overrides, "Override section.key=value");

  auto* mission = app.add_subcommand("mission", "Run one mission and print its KPIs");
  std::string map_path;
  std::string entry_text;
  std::string strategy_text = "wfd";
  std::uint64_t seed = 1;
  std::string mission_config;
  std::string mission_out;
  mission->add_option("--map", map_path, "Map file")->required()->check(CLI::ExistingFile);
  mission->add_option("--entry", entry_text, "Entry point x,y (default: the map's first entry)");
  mission->add_option("--strategy", strategy_text, "wfd | lite | rrt")
      ->check(CLI::IsMember({"wfd", "lite", "rrt"}));
  mission->add_option("--seed", seed, "Mission seed");
  mission->add_option("--config", mission_config, "Config file for module parameters")->check(CLI::ExistingFile);
  mission->add_option("--out", mission_out, "Write the trace CSV and belief snapshots here");
  mission->add_option("--set", overrides, "Override section.key=value");

  auto* validate = app.add_subcommand("validate", "Check a map file");
  std::string validate_map;
  validate->add_option("--map", validate_map, "Map file")->required();

  auto* calibrate = app.add_subcommand("calibrate-battery", "Derive the hover current and check endurance");
  double capacity = 4.28;
  double endurance = 30.0;
  double failsafe = 5.0;
  std::string calib_map;
  std::string calib_strategy = "wfd";
  calibrate->add_option("--capacity", capacity, "Pack capacity [Ah]");
  calibrate->add_option("--endurance", endurance, "Hover endurance to the fail-safe level [min]");
  calibrate->add_option("--failsafe", failsafe, "Fail-safe level [%]");
  calibrate->add_option("--map", calib_map, "Also compare one mission's consumption with hover-only")
      ->check(CLI::ExistingFile);
  calibrate->add_option("--strategy", calib_strategy, "Strategy for the comparison mission");
  calibrate->add_option("--set", overrides, "Override section.key=value");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir, threads, overrides);
    if (*mission) {
      return cmd_mission(map_path, entry_text, strategy_text, seed, mission_config, mission_out, overrides);
    }
    if (*validate) return cmd_validate(validate_map);
    if (*calibrate) return cmd_calibrate(capacity, endurance, failsafe, calib_map, calib_strategy, overrides);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
