// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../common/oracles.hpp"
#include "explore_bench/batch.hpp"
#include "explore_bench/config.hpp"
#include "explore_bench/reports.hpp"

namespace {

using namespace explore;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string& what, const std::string& detail) {
    fmt::print("{} criterion {}: {} ({})\n", ok ? "PASS" : "FAIL", id, what, detail);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

void frontier_equivalence(Report& report) {
  const auto t0 = Clock::now();
  int mismatches = 0;
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    const auto rb = oracle::random_connected_belief(seed);
    const auto wfd = detect_frontiers_wfd(rb.belief, rb.robot);
    const auto naive = detect_frontiers_naive(rb.belief);
    if (oracle::canonical(wfd.frontiers) != oracle::canonical(naive)) ++mismatches;
  }
  const double secs = seconds_since(t0);
  report.line(1, mismatches == 0 && secs < 10.0, "WFD output equals the naive detector on 200 random beliefs",
              fmt::format("{} mismatches, {:.2f} s", mismatches, secs));
}

void planner_optimality(Report& report) {
  int mismatches = 0, solved = 0;
  for (std::uint64_t seed = 5000; seed < 5200; ++seed) {
    const auto pc = oracle::random_planning_case(seed);
    PlanStats stats;
    const auto path = plan_astar(pc.mask, pc.start, pc.goal, &stats);
    const auto expected = oracle::dijkstra_cost(pc.mask, pc.start, pc.goal);
    if (path.has_value() != expected.has_value()) {
      ++mismatches;
      continue;
    }
    if (!path) continue;
    ++solved;
    const double cost = grid_path_cost(stats.cardinal_moves, stats.diagonal_moves, pc.mask.geometry().resolution());
    if (cost != *expected) ++mismatches;
  }
  report.line(2, mismatches == 0, "A* cost equals Dijkstra cost on 200 random grids",
              fmt::format("{} mismatches, {} solvable", mismatches, solved));
}

// Per-trace properties gathered from the batch sink.
struct TraceAudit {
  std::size_t samples = 0;
  std::size_t voltage_mismatches = 0;
  std::size_t level_increases = 0;
  std::size_t moves_after_failsafe = 0;
  std::size_t collisions = 0;
  std::size_t limit_violations = 0;
  double worst_voltage_error = 0.0;

  void inspect(const MissionRecord& m, const MissionConfig& cfg) {
    const MissionResult& r = m.output.result;
    const BatteryParams& b = cfg.battery;
    bool failsafe_seen = false;
    double last_level = std::numeric_limits<double>::infinity();
    for (const TraceSample& s : r.trajectory) {
      ++samples;
      const double v = b.v0 + b.gamma * ((1.0 - s.discharged_ah) / b.capacity) - b.resistance * s.current;
      worst_voltage_error = std::max(worst_voltage_error, std::abs(v - s.voltage));
      if (std::abs(v - s.voltage) > 1e-9) ++voltage_mismatches;
      if (s.level_percent > last_level) ++level_increases;
      last_level = s.level_percent;
      if (failsafe_seen) ++moves_after_failsafe;
      if (s.level_percent <= b.failsafe_percent + 1e-9) failsafe_seen = true;
      if (s.truth_clearance < cfg.body_radius) ++collisions;
      if (!within_limits(s.state, cfg.limits)) ++limit_violations;
    }
    if (r.status == MissionStatus::CollisionAbort) ++collisions;
    limit_violations += r.limit_violations;
  }
};

double hover_endurance_minutes(const BatteryParams& params) {
  BatteryState b(params);
  const double dt = 0.1;
  long steps = 0;
  while (!failsafe_triggered(b)) {
    b.discharge(draw_current(params, RobotState{}, 0, dt), dt);
    ++steps;
  }
  return static_cast<double>(steps) * dt / 60.0;
}

void kpi_oracle(Report& report) {
  const GroundTruthMap truth = load_map_file(std::string(EXPLORE_BENCH_TEST_MAPS_DIR) + "/room.map");
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> step(-0.06, 0.06);
  double worst = 0.0;
  std::vector<KpiReport> reports;
  for (int log = 0; log < 50; ++log) {
    MissionResult r;
    r.status = log % 3 ? MissionStatus::Complete : MissionStatus::BatteryFailsafe;
    r.belief_final = BeliefMap(truth.geometry());
    const int n = 2 + static_cast<int>(rng() % 3000);
    WorldPoint p{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      TraceSample s;
      s.time = i * 0.1;
      s.state.position = p;
      r.trajectory.push_back(s);
      p.x += step(rng);
      p.y += step(rng);
    }
    const double keep = 0.5 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < truth.geometry().cell_count(); ++i) {
      if (u(rng) >= keep) continue;
      r.belief_final.set_class(truth.geometry().cell_at(i),
                               truth.at(i) == Occupancy::Occupied ? CellClass::Occupied : CellClass::Free);
    }
    r.sim_time = (n - 1) * 0.1;
    const KpiReport k = compute_kpis(r, truth);
    reports.push_back(k);

    double ec = 0.0;
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
      ec += std::hypot(r.trajectory[i].state.position.x - r.trajectory[i - 1].state.position.x,
                       r.trajectory[i].state.position.y - r.trajectory[i - 1].state.position.y);
    }
    std::size_t known = 0, free_truth = 0;
    for (std::size_t i = 0; i < truth.geometry().cell_count(); ++i) {
      known += r.belief_final.classify(i) != CellClass::Unknown;
      free_truth += truth.at(i) == Occupancy::Free;
    }
    const double area = truth.resolution() * truth.resolution();
    const double ae = static_cast<double>(known) * area;
    const double mc = std::min(1.0, ae / (static_cast<double>(free_truth) * area));
    worst = std::max({worst, std::abs(k.ec - ec), std::abs(k.ef - ae / ec), std::abs(k.mc - mc)});
  }
  auto column = [&](auto member) {
    std::vector<double> v;
    for (const KpiReport& k : reports) v.push_back(k.*member);
    return v;
  };
  const AggregateRow row = aggregate(reports);
  const std::pair<const KpiStat*, std::vector<double>> cols[] = {
      {&row.ec, column(&KpiReport::ec)}, {&row.tt, column(&KpiReport::tt)}, {&row.ef, column(&KpiReport::ef)},
      {&row.bl, column(&KpiReport::bl)}, {&row.mc, column(&KpiReport::mc)}};
  double worst_agg = 0.0;
  for (const auto& [stat, values] : cols) {
    const auto [m, sd] = oracle::mean_std(values);
    worst_agg = std::max({worst_agg, std::abs(stat->mean - m), std::abs(stat->stddev - sd)});
  }
  report.line(4, worst <= 1e-9 && worst_agg <= 1e-9, "KPI values match independent recomputation on 50 logs",
              fmt::format("max KPI error {:.3g}, max aggregate error {:.3g}", worst, worst_agg));
}

std::string aggregate_bytes(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_aggregate_csv(out, run_batch(cfg).aggregates);
  return out.str();
}

}  // namespace

int main() {
  Report report;
  frontier_equivalence(report);
  planner_optimality(report);

  const ExperimentConfig cfg =
      load_experiment_config(std::string(EXPLORE_BENCH_TEST_CONFIGS_DIR) + "/acceptance.ini");

  TraceAudit audit;
  std::map<std::string, double> room_wall_seconds;  // worst per strategy
  auto last = Clock::now();
  BatchOptions options;
  options.sink = [&](const MissionRecord& m) {
    audit.inspect(m, cfg.mission);
    const double secs = seconds_since(last);
    last = Clock::now();
    if (m.environment == "room") {
      double& worst = room_wall_seconds[std::string(strategy_name(m.strategy))];
      worst = std::max(worst, secs);
    }
    fmt::print("  mission {} -> {} Mc {:.3f} Tt {:.2f} min ({:.1f} s)\n", m.id(),
               status_name(m.output.result.status), m.kpis.mc, m.kpis.tt, secs);
    std::fflush(stdout);
  };
  const auto batch_start = Clock::now();
  const BatchResult batch = run_batch(cfg, options);
  const double batch_secs = seconds_since(batch_start);

  {
    const double minutes = hover_endurance_minutes(cfg.mission.battery);
    const bool ok = audit.voltage_mismatches == 0 && audit.level_increases == 0 &&
                    audit.moves_after_failsafe == 0 && std::abs(minutes - 30.0) <= 1.5;
    report.line(3, ok, "battery identity, monotone level, no motion after fail-safe, hover endurance",
                fmt::format("{} samples, max |dV| {:.3g}, {} level increases, {} samples after fail-safe, "
                            "hover {:.2f} min",
                            audit.samples, audit.worst_voltage_error, audit.level_increases,
                            audit.moves_after_failsafe, minutes));
  }

  kpi_oracle(report);

  {
    bool ok = true;
    std::string detail;
    for (StrategyKind s : {StrategyKind::Wfd, StrategyKind::Lite}) {
      std::size_t successes = 0, runs = 0;
      double min_mc = 1.0, max_tt = 0.0, min_ec = 1e9, max_ec = 0.0;
      for (const MissionRecord& m : batch.missions) {
        if (m.environment != "room" || m.strategy != s) continue;
        ++runs;
        successes += m.kpis.success;
        min_mc = std::min(min_mc, m.kpis.mc);
        max_tt = std::max(max_tt, m.kpis.tt);
        min_ec = std::min(min_ec, m.kpis.ec);
        max_ec = std::max(max_ec, m.kpis.ec);
      }
      const double wall = room_wall_seconds[std::string(strategy_name(s))];
      ok = ok && runs == 5 && successes == 5 && min_mc >= 0.97 && max_tt <= 3.0 && min_ec >= 5.0 &&
           max_ec <= 20.0 && wall < 120.0;
      detail += fmt::format("{}: Ms {}/{}, Mc min {:.3f}, Tt max {:.2f} min, Ec [{:.1f}, {:.1f}] m, "
                            "slowest {:.1f} s; ",
                            strategy_name(s), successes, runs, min_mc, max_tt, min_ec, max_ec, wall);
    }
    detail.resize(detail.size() - 2);
    report.line(5, ok, "small-room reproduction for wfd and lite", detail);
  }

  {
    std::map<StrategyKind, std::vector<double>> mc;
    for (const MissionRecord& m : batch.missions) {
      if (m.environment == "school") mc[m.strategy].push_back(m.kpis.mc);
    }
    auto mean = [&](StrategyKind s) { return oracle::mean_std(mc[s]).first; };
    const double rrt = mean(StrategyKind::Rrt), wfd = mean(StrategyKind::Wfd), lite = mean(StrategyKind::Lite);
    const bool ok = mc[StrategyKind::Rrt].size() == 3 && rrt >= wfd && rrt >= lite;
    report.line(6, ok, "RRT mean Mc on the school map is at least that of wfd and lite",
                fmt::format("rrt {:.3f}, wfd {:.3f}, lite {:.3f} over {} seeds", rrt, wfd, lite,
                            mc[StrategyKind::Rrt].size()));
  }

  {
    ExperimentConfig room_only = cfg;
    room_only.environments.resize(1);
    const std::string a = aggregate_bytes(room_only);
    room_only.threads = 3;
    const std::string b = aggregate_bytes(room_only);
    std::ostringstream full;
    std::vector<AggregateRecord> room_rows;
    for (const AggregateRecord& r : batch.aggregates) {
      if (r.environment == "room") room_rows.push_back(r);
    }
    write_aggregate_csv(full, room_rows);
    report.line(7, a == b && a == full.str(), "repeated batches give byte-identical aggregate.csv",
                fmt::format("{} bytes, threads 1 vs 3 vs full batch", a.size()));
  }

  report.line(8, audit.collisions == 0 && audit.limit_violations == 0,
              "no ground-truth collisions or kinematic-limit violations",
              fmt::format("{} collisions, {} limit violations over {} samples", audit.collisions,
                          audit.limit_violations, audit.samples));

  {
    double lo = 1e9, hi = 0.0;
    for (const MissionRecord& m : batch.missions) {
      if (m.environment != "room" || m.output.result.sim_time <= 0.0) continue;
      const double speed = m.kpis.ec / m.output.result.sim_time;
      lo = std::min(lo, speed);
      hi = std::max(hi, speed);
    }
    report.line(9, lo >= 0.25 && hi <= 0.45, "open-room mean speed within [0.25, 0.45] m/s",
                fmt::format("range [{:.3f}, {:.3f}] m/s", lo, hi));
  }

  fmt::print("acceptance batch: {} missions in {:.0f} s; {} criteria failed\n", batch.missions.size(), batch_secs,
             report.failures);
  return report.failures == 0 ? 0 : 1;
}
