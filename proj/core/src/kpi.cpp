#include "explore_bench/kpi.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace explore {

std::string_view status_name(MissionStatus status) {
  switch (status) {
    case MissionStatus::Complete:
      return "complete";
    case MissionStatus::BatteryFailsafe:
      return "battery_failsafe";
    case MissionStatus::StrategyTerminated:
      return "strategy_terminated";
    case MissionStatus::FailedToStart:
      return "failed_to_start";
    case MissionStatus::CollisionAbort:
      return "collision_abort";
    case MissionStatus::TimeCap:
      return "time_cap";
  }
  return "unknown";
}

double path_length(std::span<const TraceSample> trajectory) {
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    total += distance(trajectory[i - 1].state.position, trajectory[i].state.position);
  }
  return total;
}

KpiReport compute_kpis(const MissionResult& result, const GroundTruthMap& truth, double mc_success_threshold) {
  KpiReport k;
  k.ec = path_length(result.trajectory);
  k.tt = result.sim_time / 60.0;
  k.ae = result.belief_final.geometry().cell_count() > 0 ? explored_area(result.belief_final) : 0.0;
  const double at = truth.total_free_area();
  if (k.ec > 0.0) {
    k.ef = k.ae / k.ec;
  } else {
    k.ef = 0.0;
    k.ef_undefined = k.ae > 0.0;
  }
  k.mc = at > 0.0 ? std::clamp(k.ae / at, 0.0, 1.0) : 0.0;
  const double free_area = result.belief_final.geometry().cell_count() > 0
                               ? result.belief_final.free_explored_area()
                               : 0.0;
  k.mc_free = at > 0.0 ? std::clamp(free_area / at, 0.0, 1.0) : 0.0;
  k.bl = std::clamp(result.battery_final.level_percent(), 0.0, 100.0);
  k.success = result.status == MissionStatus::Complete && k.mc >= mc_success_threshold;
  return k;
}

KpiStat summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  KpiStat s;
  s.mean = sum / n;
  if (sorted.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

std::string AggregateRow::ms() const { return fmt::format("{}/{}", successes, runs); }

AggregateRow aggregate(std::span<const KpiReport> reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate: empty report list");
  AggregateRow row;
  row.runs = reports.size();
  auto column = [&](auto member) {
    std::vector<double> v;
    v.reserve(reports.size());
    for (const KpiReport& r : reports) v.push_back(r.*member);
    return summarize(v);
  };
  row.ec = column(&KpiReport::ec);
  row.tt = column(&KpiReport::tt);
  row.ef = column(&KpiReport::ef);
  row.bl = column(&KpiReport::bl);
  row.mc = column(&KpiReport::mc);
  row.mc_free = column(&KpiReport::mc_free);
  row.successes = static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const KpiReport& r) { return r.success; }));
  return row;
}

}  // namespace explore
