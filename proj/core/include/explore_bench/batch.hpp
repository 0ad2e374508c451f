#pragma once

#include <functional>
#include <string>
#include <vector>

#include "explore_bench/config.hpp"
#include "explore_bench/kpi.hpp"
#include "explore_bench/mission.hpp"

namespace explore {

/// One mission of a batch with its KPIs. Heavy fields (trace, belief, snapshots)
/// are only populated while the record is handed to the sink.
struct MissionRecord {
  std::string environment;
  std::size_t entry_index = 0;
  WorldPoint entry{};
  StrategyKind strategy = StrategyKind::Wfd;
  int trial = 0;
  std::uint64_t seed = 0;
  MissionOutput output;
  KpiReport kpis;

  std::string id() const;
};

struct AggregateRecord {
  std::string environment;
  std::size_t entry_index = 0;
  WorldPoint entry{};
  StrategyKind strategy = StrategyKind::Wfd;
  AggregateRow row;
};

struct BatchResult {
  std::vector<MissionRecord> missions;      // ordered by cell, then trial
  std::vector<AggregateRecord> aggregates;  // one per (environment, entry, strategy) cell
};

struct BatchOptions {
  /// Called once per finished mission with its full output, serialized across threads.
  std::function<void(const MissionRecord&)> sink;
  /// Keep trace, belief and snapshots in the returned records.
  bool keep_outputs = false;
};

/// Runs every (environment, entry, strategy) x trial cell with seed = seed_base + trial.
/// Mission failures become statuses; the batch itself always completes.
BatchResult run_batch(const ExperimentConfig& config, const BatchOptions& options = {});

}  // namespace explore
