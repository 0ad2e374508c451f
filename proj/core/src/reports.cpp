#include "explore_bench/reports.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace explore {
namespace {

// Free-text fields never contain separators in the output.
std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ' ');
  return s;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  body(out);
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

constexpr const char* kKpiNames[6] = {"Ec", "Tt", "Ef", "Bl", "Mc", "Ms"};

}  // namespace

std::string format_mean_std(const KpiStat& stat, int decimals) {
  return fmt::format("{:.{}f}±{:.{}f}", stat.mean, decimals, stat.stddev, decimals);
}

void write_results_csv(std::ostream& out, std::span<const MissionRecord> missions) {
  out << "environment,entry_index,entry_x,entry_y,strategy,trial,seed,status,Ec_m,Tt_min,Ef_m2_per_m,Bl_percent,"
         "Mc,Mc_free,Ae_m2,success,ef_undefined,sim_time_s,steps,decisions,compute_ops,blacklisted_goals,"
         "min_truth_clearance_m,limit_violations,detail\n";
  for (const MissionRecord& m : missions) {
    const MissionResult& r = m.output.result;
    const KpiReport& k = m.kpis;
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", m.environment,
               m.entry_index, m.entry.x, m.entry.y, strategy_name(m.strategy), m.trial, m.seed,
               status_name(r.status), k.ec, k.tt, k.ef, k.bl, k.mc, k.mc_free, k.ae, k.success ? 1 : 0,
               k.ef_undefined ? 1 : 0, r.sim_time, r.steps, r.decisions, r.compute_ops, r.blacklisted_goals,
               r.min_truth_clearance, r.limit_violations, sanitize(r.detail));
  }
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRecord> aggregates) {
  out << "environment,entry_index,entry_x,entry_y,strategy,runs,Ec_mean,Ec_std,Tt_mean,Tt_std,Ef_mean,Ef_std,"
         "Bl_mean,Bl_std,Mc_mean,Mc_std,Mc_free_mean,Mc_free_std,Ms\n";
  for (const AggregateRecord& a : aggregates) {
    const AggregateRow& r = a.row;
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", a.environment, a.entry_index,
               a.entry.x, a.entry.y, strategy_name(a.strategy), r.runs, r.ec.mean, r.ec.stddev, r.tt.mean,
               r.tt.stddev, r.ef.mean, r.ef.stddev, r.bl.mean, r.bl.stddev, r.mc.mean, r.mc.stddev, r.mc_free.mean,
               r.mc_free.stddev, r.ms());
  }
}

void write_trace_csv(std::ostream& out, const MissionResult& result) {
  out << "time_s,x,y,heading,linear_velocity,angular_velocity,current_a,voltage_v,discharged_ah,level_percent,"
         "compute_ops,explored_area_m2,truth_clearance_m,recovery\n";
  for (const TraceSample& s : result.trajectory) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", s.time, s.state.position.x, s.state.position.y,
               s.state.heading, s.state.linear_velocity, s.state.angular_velocity, s.current, s.voltage,
               s.discharged_ah, s.level_percent, s.compute_ops, s.explored_area, s.truth_clearance,
               s.recovery ? 1 : 0);
  }
}

std::vector<SpiderRow> spider_data(std::span<const MissionRecord> missions) {
  // Environments and strategies in first-appearance order.
  std::vector<std::string> envs;
  std::vector<StrategyKind> strategies;
  for (const MissionRecord& m : missions) {
    if (std::find(envs.begin(), envs.end(), m.environment) == envs.end()) envs.push_back(m.environment);
    if (std::find(strategies.begin(), strategies.end(), m.strategy) == strategies.end()) {
      strategies.push_back(m.strategy);
    }
  }
  std::vector<SpiderRow> rows;
  for (const std::string& env : envs) {
    const std::size_t first = rows.size();
    for (StrategyKind s : strategies) {
      std::vector<double> cols[6];
      for (const MissionRecord& m : missions) {
        if (m.environment != env || m.strategy != s) continue;
        cols[0].push_back(m.kpis.ec);
        cols[1].push_back(m.kpis.tt);
        cols[2].push_back(m.kpis.ef);
        cols[3].push_back(m.kpis.bl);
        cols[4].push_back(m.kpis.mc);
        cols[5].push_back(m.kpis.success ? 1.0 : 0.0);
      }
      if (cols[0].empty()) continue;
      SpiderRow row;
      row.environment = env;
      row.strategy = s;
      for (int k = 0; k < 6; ++k) row.raw[k] = summarize(cols[k]).mean;
      rows.push_back(row);
    }
    for (int k = 0; k < 6; ++k) {
      double max = 0.0;
      for (std::size_t i = first; i < rows.size(); ++i) max = std::max(max, rows[i].raw[k]);
      for (std::size_t i = first; i < rows.size(); ++i) rows[i].normalized[k] = max > 0.0 ? rows[i].raw[k] / max : 0.0;
    }
  }
  return rows;
}

void write_spider_csv(std::ostream& out, std::span<const SpiderRow> rows) {
  out << "environment,strategy";
  for (const char* name : kKpiNames) out << ',' << name << "_norm";
  for (const char* name : kKpiNames) out << ',' << name << "_mean";
  out << '\n';
  for (const SpiderRow& r : rows) {
    out << r.environment << ',' << strategy_name(r.strategy);
    for (double v : r.normalized) fmt::print(out, ",{}", v);
    for (double v : r.raw) fmt::print(out, ",{}", v);
    out << '\n';
  }
}

void write_batch_tables(const std::filesystem::path& dir, const BatchResult& batch) {
  std::filesystem::create_directories(dir);
  write_file(dir / "results.csv", [&](std::ostream& o) { write_results_csv(o, batch.missions); });
  write_file(dir / "aggregate.csv", [&](std::ostream& o) { write_aggregate_csv(o, batch.aggregates); });
  const auto spider = spider_data(batch.missions);
  write_file(dir / "spider.csv", [&](std::ostream& o) { write_spider_csv(o, spider); });
}

}  // namespace explore
