#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "explore_bench/batch.hpp"

namespace explore {

/// "8.4±0.6" with the given number of decimals.
std::string format_mean_std(const KpiStat& stat, int decimals = 1);

void write_results_csv(std::ostream& out, std::span<const MissionRecord> missions);
void write_aggregate_csv(std::ostream& out, std::span<const AggregateRecord> aggregates);
void write_trace_csv(std::ostream& out, const MissionResult& result);

/// Per environment and strategy: KPI means over all entries and trials, and the
/// same means divided by the largest value any strategy reached in that environment.
struct SpiderRow {
  std::string environment;
  StrategyKind strategy = StrategyKind::Wfd;
  double raw[6] = {};         // Ec, Tt, Ef, Bl, Mc, Ms
  double normalized[6] = {};  // raw / max over strategies (0 when the max is 0)
};

std::vector<SpiderRow> spider_data(std::span<const MissionRecord> missions);
void write_spider_csv(std::ostream& out, std::span<const SpiderRow> rows);

/// Writes results.csv, aggregate.csv and spider.csv into dir.
void write_batch_tables(const std::filesystem::path& dir, const BatchResult& batch);

}  // namespace explore
