#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "explore_bench/envmap.hpp"
#include "explore_bench/mission.hpp"
#include "explore_bench/strategies.hpp"

namespace explore {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One [env:<name>] section: a map file or generator settings, plus entry points.
struct EnvironmentSpec {
  std::string name;
  std::filesystem::path map_path;
  std::optional<EnvironmentCategory> generate;
  std::uint64_t generator_seed = 1;
  double resolution = 0.1;             // generator only
  std::vector<WorldPoint> entries;     // empty: the map's own entry points
  std::optional<int> trials;           // overrides the experiment default
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<EnvironmentSpec> environments;
  std::vector<StrategyKind> strategies{StrategyKind::Wfd, StrategyKind::Lite, StrategyKind::Rrt};
  int trials_per_cell = 5;
  std::uint64_t seed_base = 1;
  unsigned threads = 0;  // 0: one per hardware thread
  bool write_traces = true;
  bool write_snapshots = true;
  MissionConfig mission;
};

/// INI-style text: [section] headers and `key = value` lines; '#' or ';' start a
/// comment line. Unknown sections and keys are errors. Relative map paths resolve
/// against base_dir.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

/// Sets one module parameter, e.g. ("dwa", "horizon", "1.5"). Throws ConfigError.
void apply_setting(MissionConfig& config, std::string_view section, std::string_view key, std::string_view value);

/// Parses "x,y".
WorldPoint parse_point(std::string_view text);

/// Loads or generates the map and applies the entry override.
GroundTruthMap materialize_environment(const EnvironmentSpec& spec);

}  // namespace explore
