#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "explore_bench/frontiers.hpp"
#include "explore_bench/mapping.hpp"
#include "explore_bench/navigation.hpp"
#include "explore_bench/rrt.hpp"
#include "explore_bench/sensing.hpp"

namespace {

using namespace explore;

const GroundTruthMap& office() {
  static const GroundTruthMap map = load_map_file(std::string(EXPLORE_BENCH_BENCH_MAPS_DIR) + "/office.map");
  return map;
}

RobotState entry_pose() {
  RobotState s;
  s.position = office().entry_points()[0];
  return s;
}

// Belief after a short sweep of scans along the office's lower corridor.
const BeliefMap& partial_belief() {
  static const BeliefMap belief = [] {
    BeliefMap b(office().geometry());
    std::mt19937_64 rng(1);
    RobotState pose = entry_pose();
    for (int i = 0; i < 8; ++i) {
      pose.heading = i * 0.8;
      b.integrate_scan(simulate_scan(office(), pose, LidarParams{}, rng));
    }
    return b;
  }();
  return belief;
}

void BM_SimulateScan(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const RobotState pose = entry_pose();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_scan(office(), pose, LidarParams{}, rng));
}
BENCHMARK(BM_SimulateScan);

void BM_IntegrateScan(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const LidarScan scan = simulate_scan(office(), entry_pose(), LidarParams{}, rng);
  BeliefMap b(office().geometry());
  for (auto _ : state) benchmark::DoNotOptimize(b.integrate_scan(scan));
}
BENCHMARK(BM_IntegrateScan);

void BM_FrontiersNaive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(detect_frontiers_naive(partial_belief()));
}
BENCHMARK(BM_FrontiersNaive);

void BM_FrontiersWfd(benchmark::State& state) {
  const GridCell robot = office().geometry().cell_of(entry_pose().position);
  for (auto _ : state) benchmark::DoNotOptimize(detect_frontiers_wfd(partial_belief(), robot));
}
BENCHMARK(BM_FrontiersWfd);

void BM_AStar(benchmark::State& state) {
  BeliefMap known(office().geometry());
  for (std::size_t i = 0; i < office().geometry().cell_count(); ++i) {
    known.set_class(office().geometry().cell_at(i),
                    office().at(i) == Occupancy::Occupied ? CellClass::Occupied : CellClass::Free);
  }
  const CostMask mask = inflate(known, 0.4);
  const WorldPoint a = office().entry_points()[0];
  const WorldPoint b = office().entry_points()[1];
  for (auto _ : state) benchmark::DoNotOptimize(plan_astar(mask, a, b));
}
BENCHMARK(BM_AStar);

void BM_RrtStep(benchmark::State& state) {
  const RrtParams params;
  const RobotState robot = entry_pose();
  RrtTree local(robot.position, params.eta, office().geometry());
  RrtTree global(robot.position, params.eta, office().geometry());
  std::mt19937_64 rng(3);
  ComputeLoadMeter meter;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rrt_step(partial_belief(), robot, local, global, rng, meter, params));
  }
}
BENCHMARK(BM_RrtStep);

}  // namespace

BENCHMARK_MAIN();
