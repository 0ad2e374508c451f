#include "explore_bench/batch.hpp"

#include <fmt/format.h>

#include <atomic>
#include <mutex>
#include <thread>

namespace explore {

std::string MissionRecord::id() const {
  return fmt::format("{}_e{}_{}_t{}", environment, entry_index, strategy_name(strategy), trial);
}

BatchResult run_batch(const ExperimentConfig& config, const BatchOptions& options) {
  std::vector<GroundTruthMap> maps;
  maps.reserve(config.environments.size());
  for (const EnvironmentSpec& env : config.environments) maps.push_back(materialize_environment(env));

  BatchResult batch;
  struct Cell {
    std::size_t env;
    std::size_t entry;
    StrategyKind strategy;
    std::size_t first;
    std::size_t count;
  };
  std::vector<Cell> cells;
  std::vector<const GroundTruthMap*> mission_maps;
  for (std::size_t e = 0; e < maps.size(); ++e) {
    const int trials = config.environments[e].trials.value_or(config.trials_per_cell);
    for (std::size_t p = 0; p < maps[e].entry_points().size(); ++p) {
      for (StrategyKind s : config.strategies) {
        cells.push_back({e, p, s, batch.missions.size(), static_cast<std::size_t>(trials)});
        for (int t = 0; t < trials; ++t) {
          MissionRecord rec;
          rec.environment = maps[e].name();
          rec.entry_index = p;
          rec.entry = maps[e].entry_points()[p];
          rec.strategy = s;
          rec.trial = t;
          rec.seed = config.seed_base + static_cast<std::uint64_t>(t);
          batch.missions.push_back(std::move(rec));
          mission_maps.push_back(&maps[e]);
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < batch.missions.size(); i = next++) {
      MissionRecord& rec = batch.missions[i];
      const GroundTruthMap& map = *mission_maps[i];
      rec.output = run_mission(map, rec.entry, rec.strategy, rec.seed, config.mission);
      rec.kpis = compute_kpis(rec.output.result, map, config.mission.mc_success_threshold);
      if (options.sink) {
        std::lock_guard lock(sink_mutex);
        options.sink(rec);
      }
      if (!options.keep_outputs) {
        MissionResult& r = rec.output.result;
        r.trajectory = {};
        r.belief_final = BeliefMap{};
        rec.output.snapshots = {};
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, batch.missions.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (const Cell& c : cells) {
    std::vector<KpiReport> reports;
    for (std::size_t i = c.first; i < c.first + c.count; ++i) reports.push_back(batch.missions[i].kpis);
    AggregateRecord agg;
    agg.environment = maps[c.env].name();
    agg.entry_index = c.entry;
    agg.entry = maps[c.env].entry_points()[c.entry];
    agg.strategy = c.strategy;
    agg.row = aggregate(reports);
    batch.aggregates.push_back(std::move(agg));
  }
  return batch;
}

}  // namespace explore
