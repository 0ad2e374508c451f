#include "explore_bench/config.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace explore {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t j = s.find_first_of(seps, i);
    const std::string_view tok = trim(s.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i));
    if (!tok.empty()) out.push_back(tok);
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, v));
  }
  return out;
}

long long parse_int(std::string_view key, std::string_view v) {
  v = trim(v);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, v));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", key, v));
}

double positive(std::string_view key, double x) {
  if (!(x > 0.0)) throw ConfigError(fmt::format("{}: must be positive", key));
  return x;
}

double non_negative(std::string_view key, double x) {
  if (x < 0.0) throw ConfigError(fmt::format("{}: must not be negative", key));
  return x;
}

using Setter = std::function<void(MissionConfig&, std::string_view key, std::string_view value)>;

template <class Getter>
Setter nested(Getter get, bool require_positive = false) {
  return [get, require_positive](MissionConfig& c, std::string_view k, std::string_view v) {
    const double x = parse_double(k, v);
    get(c) = require_positive ? positive(k, x) : x;
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  constexpr double kDeg = std::numbers::pi / 180.0;
  static const std::map<std::string, Setter, std::less<>> table = {
      // mission loop
      {"mission.dt", nested([](MissionConfig& c) -> double& { return c.dt; }, true)},
      {"mission.time_cap_min", nested([](MissionConfig& c) -> double& { return c.time_cap_min; }, true)},
      {"mission.decision_period", nested([](MissionConfig& c) -> double& { return c.decision_period; }, true)},
      {"mission.idle_retry_period", nested([](MissionConfig& c) -> double& { return c.idle_retry_period; }, true)},
      {"mission.replan_period", nested([](MissionConfig& c) -> double& { return c.replan_period; }, true)},
      {"mission.goal_tolerance", nested([](MissionConfig& c) -> double& { return c.goal_tolerance; }, true)},
      {"mission.blacklist_after_failures",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const long long n = parse_int(k, v);
         if (n < 1) throw ConfigError(fmt::format("{}: must be at least 1", k));
         c.blacklist_after_failures = static_cast<int>(n);
       }},
      {"mission.plan_inflation",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.plan_inflation = non_negative(k, parse_double(k, v));
       }},
      {"mission.body_radius",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.body_radius = non_negative(k, parse_double(k, v));
       }},
      {"mission.initial_heading_deg",
       [kDeg](MissionConfig& c, std::string_view k, std::string_view v) {
         c.initial_heading = parse_double(k, v) * kDeg;
       }},
      {"mission.initial_battery_percent",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const double x = parse_double(k, v);
         if (x < 0.0 || x > 100.0) throw ConfigError(fmt::format("{}: must lie in [0, 100]", k));
         c.initial_battery_percent = x;
       }},
      {"mission.snapshot_period",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.snapshot_period = non_negative(k, parse_double(k, v));
       }},
      // lidar
      {"lidar.fov_deg",
       [kDeg](MissionConfig& c, std::string_view k, std::string_view v) {
         c.lidar.field_of_view = positive(k, parse_double(k, v)) * kDeg;
       }},
      {"lidar.angular_resolution_deg",
       [kDeg](MissionConfig& c, std::string_view k, std::string_view v) {
         c.lidar.angular_resolution = positive(k, parse_double(k, v)) * kDeg;
       }},
      {"lidar.range_max", nested([](MissionConfig& c) -> double& { return c.lidar.range_max; }, true)},
      {"lidar.noise_stddev",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.lidar.noise_stddev = non_negative(k, parse_double(k, v));
       }},
      // mapping
      {"mapping.free_increment", nested([](MissionConfig& c) -> double& { return c.mapping.free_increment; })},
      {"mapping.occupied_increment",
       nested([](MissionConfig& c) -> double& { return c.mapping.occupied_increment; })},
      {"mapping.log_odds_min", nested([](MissionConfig& c) -> double& { return c.mapping.log_odds_min; })},
      {"mapping.log_odds_max", nested([](MissionConfig& c) -> double& { return c.mapping.log_odds_max; })},
      {"mapping.free_threshold", nested([](MissionConfig& c) -> double& { return c.mapping.free_threshold; })},
      {"mapping.occupied_threshold",
       nested([](MissionConfig& c) -> double& { return c.mapping.occupied_threshold; })},
      // strategies
      {"strategy.goal_obstacle_radius",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.strategy.goal_obstacle_radius = non_negative(k, parse_double(k, v));
       }},
      {"strategy.blacklist_radius",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.strategy.blacklist_radius = non_negative(k, parse_double(k, v));
       }},
      {"strategy.min_frontier_size",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const long long n = parse_int(k, v);
         if (n < 1) throw ConfigError(fmt::format("{}: must be at least 1", k));
         c.strategy.frontier.min_frontier_size = static_cast<std::size_t>(n);
       }},
      {"strategy.lite_gain_weight", nested([](MissionConfig& c) -> double& { return c.strategy.lite.gain_weight; })},
      {"strategy.lite_distance_weight",
       nested([](MissionConfig& c) -> double& { return c.strategy.lite.distance_weight; })},
      {"strategy.rrt_eta", nested([](MissionConfig& c) -> double& { return c.strategy.rrt.eta; }, true)},
      {"strategy.rrt_lambda", nested([](MissionConfig& c) -> double& { return c.strategy.rrt.revenue_lambda; })},
      {"strategy.rrt_idle_decisions",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const long long n = parse_int(k, v);
         if (n < 1) throw ConfigError(fmt::format("{}: must be at least 1", k));
         c.strategy.rrt.idle_decisions = static_cast<int>(n);
       }},
      {"strategy.rrt_cluster_cutoff",
       nested([](MissionConfig& c) -> double& { return c.strategy.rrt.cluster_cutoff; }, true)},
      {"strategy.rrt_info_radius",
       nested([](MissionConfig& c) -> double& { return c.strategy.rrt.info_radius; }, true)},
      {"strategy.rrt_iterations_per_step",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const long long n = parse_int(k, v);
         if (n < 0) throw ConfigError(fmt::format("{}: must not be negative", k));
         c.strategy.rrt.iterations_per_step = static_cast<int>(n);
       }},
      {"strategy.rrt_goal_snap_radius",
       nested([](MissionConfig& c) -> double& { return c.strategy.rrt.goal_snap_radius; }, true)},
      {"strategy.rrt_hysteresis_radius",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.strategy.rrt.hysteresis_radius = non_negative(k, parse_double(k, v));
       }},
      {"strategy.rrt_hysteresis_gain",
       nested([](MissionConfig& c) -> double& { return c.strategy.rrt.hysteresis_gain; }, true)},
      // local planner
      {"dwa.horizon", nested([](MissionConfig& c) -> double& { return c.dwa.horizon; }, true)},
      {"dwa.sim_step", nested([](MissionConfig& c) -> double& { return c.dwa.sim_step; }, true)},
      {"dwa.heading_weight", nested([](MissionConfig& c) -> double& { return c.dwa.heading_weight; })},
      {"dwa.clearance_weight", nested([](MissionConfig& c) -> double& { return c.dwa.clearance_weight; })},
      {"dwa.velocity_weight", nested([](MissionConfig& c) -> double& { return c.dwa.velocity_weight; })},
      {"dwa.linear_samples",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.dwa.linear_samples = static_cast<int>(std::max(1LL, parse_int(k, v)));
       }},
      {"dwa.angular_samples",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.dwa.angular_samples = static_cast<int>(std::max(1LL, parse_int(k, v)));
       }},
      {"dwa.collision_radius",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.dwa.collision_radius = non_negative(k, parse_double(k, v));
       }},
      {"dwa.clearance_cap", nested([](MissionConfig& c) -> double& { return c.dwa.clearance_cap; }, true)},
      {"dwa.lookahead", nested([](MissionConfig& c) -> double& { return c.dwa.lookahead; }, true)},
      // kinematic limits
      {"limits.min_linear_velocity", nested([](MissionConfig& c) -> double& { return c.limits.min_linear_velocity; })},
      {"limits.max_linear_velocity",
       nested([](MissionConfig& c) -> double& { return c.limits.max_linear_velocity; }, true)},
      {"limits.max_angular_velocity",
       nested([](MissionConfig& c) -> double& { return c.limits.max_angular_velocity; }, true)},
      {"limits.min_recovery_turn_rate",
       nested([](MissionConfig& c) -> double& { return c.limits.min_recovery_turn_rate; }, true)},
      {"limits.linear_acceleration",
       nested([](MissionConfig& c) -> double& { return c.limits.linear_acceleration; }, true)},
      {"limits.angular_acceleration",
       nested([](MissionConfig& c) -> double& { return c.limits.angular_acceleration; }, true)},
      // battery
      {"battery.v0", nested([](MissionConfig& c) -> double& { return c.battery.v0; }, true)},
      {"battery.gamma", nested([](MissionConfig& c) -> double& { return c.battery.gamma; })},
      {"battery.capacity", nested([](MissionConfig& c) -> double& { return c.battery.capacity; }, true)},
      {"battery.resistance",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.battery.resistance = non_negative(k, parse_double(k, v));
       }},
      {"battery.hover_current",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.battery.hover_current = non_negative(k, parse_double(k, v));
       }},
      {"battery.endurance_min",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.battery.hover_current = calibrated_hover_current(c.battery.capacity, positive(k, parse_double(k, v)),
                                                            c.battery.failsafe_percent);
       }},
      {"battery.k_linear",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.battery.k_linear = non_negative(k, parse_double(k, v));
       }},
      {"battery.k_angular",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.battery.k_angular = non_negative(k, parse_double(k, v));
       }},
      {"battery.k_compute",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         c.battery.k_compute = non_negative(k, parse_double(k, v));
       }},
      {"battery.failsafe_percent",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const double x = parse_double(k, v);
         if (x < 0.0 || x >= 100.0) throw ConfigError(fmt::format("{}: must lie in [0, 100)", k));
         c.battery.failsafe_percent = x;
       }},
      // kpi
      {"kpi.mc_success_threshold",
       [](MissionConfig& c, std::string_view k, std::string_view v) {
         const double x = parse_double(k, v);
         if (x < 0.0 || x > 1.0) throw ConfigError(fmt::format("{}: must lie in [0, 1]", k));
         c.mc_success_threshold = x;
       }},
  };
  return table;
}

void parse_experiment_section(ExperimentConfig& cfg, const boost::property_tree::ptree& section) {
  for (const auto& [key, node] : section) {
    const std::string value = node.data();
    const std::string full = "experiment." + key;
    if (key == "name") {
      cfg.name = std::string(trim(value));
    } else if (key == "strategies") {
      cfg.strategies.clear();
      for (std::string_view tok : split(value, ", ")) {
        const auto kind = parse_strategy(tok);
        if (!kind) throw ConfigError(fmt::format("{}: unknown strategy '{}'", full, tok));
        cfg.strategies.push_back(*kind);
      }
      if (cfg.strategies.empty()) throw ConfigError(fmt::format("{}: no strategy listed", full));
    } else if (key == "trials") {
      const long long n = parse_int(full, value);
      if (n < 1) throw ConfigError(fmt::format("{}: must be at least 1", full));
      cfg.trials_per_cell = static_cast<int>(n);
    } else if (key == "seed_base") {
      cfg.seed_base = static_cast<std::uint64_t>(parse_int(full, value));
    } else if (key == "threads") {
      const long long n = parse_int(full, value);
      if (n < 0) throw ConfigError(fmt::format("{}: must not be negative", full));
      cfg.threads = static_cast<unsigned>(n);
    } else if (key == "write_traces") {
      cfg.write_traces = parse_bool(full, value);
    } else if (key == "write_snapshots") {
      cfg.write_snapshots = parse_bool(full, value);
    } else {
      throw ConfigError(fmt::format("unknown key '{}'", full));
    }
  }
}

EnvironmentSpec parse_environment_section(std::string name, const boost::property_tree::ptree& section,
                                          const std::filesystem::path& base_dir) {
  EnvironmentSpec env;
  env.name = std::move(name);
  if (env.name.empty()) throw ConfigError("environment section needs a name: [env:<name>]");
  for (const auto& [key, node] : section) {
    const std::string value = node.data();
    const std::string full = fmt::format("env:{}.{}", env.name, key);
    if (key == "map") {
      std::filesystem::path p(std::string(trim(value)));
      env.map_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else if (key == "generate") {
      env.generate = parse_category(trim(value));
      if (!env.generate) throw ConfigError(fmt::format("{}: unknown category '{}'", full, value));
    } else if (key == "generator_seed") {
      env.generator_seed = static_cast<std::uint64_t>(parse_int(full, value));
    } else if (key == "resolution") {
      env.resolution = positive(full, parse_double(full, value));
    } else if (key == "entries") {
      for (std::string_view tok : split(value, " \t")) {
        try {
          env.entries.push_back(parse_point(tok));
        } catch (const ConfigError& e) {
          throw ConfigError(fmt::format("{}: {}", full, e.what()));
        }
      }
    } else if (key == "trials") {
      const long long n = parse_int(full, value);
      if (n < 1) throw ConfigError(fmt::format("{}: must be at least 1", full));
      env.trials = static_cast<int>(n);
    } else {
      throw ConfigError(fmt::format("unknown key '{}'", full));
    }
  }
  if (env.map_path.empty() == !env.generate.has_value()) {
    throw ConfigError(fmt::format("env:{}: set exactly one of 'map' or 'generate'", env.name));
  }
  return env;
}

}  // namespace

WorldPoint parse_point(std::string_view text) {
  const auto parts = split(text, ",");
  if (parts.size() != 2) throw ConfigError(fmt::format("expected 'x,y', got '{}'", text));
  return {parse_double("x", parts[0]), parse_double("y", parts[1])};
}

void apply_setting(MissionConfig& config, std::string_view section, std::string_view key, std::string_view value) {
  const std::string full = fmt::format("{}.{}", section, key);
  const auto& table = setters();
  const auto it = table.find(full);
  if (it == table.end()) throw ConfigError(fmt::format("unknown key '{}'", full));
  it->second(config, full, value);
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }
  ExperimentConfig cfg;
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty()) {
      throw ConfigError(fmt::format("key '{}' appears outside any section", name));
    }
    if (name == "experiment") {
      parse_experiment_section(cfg, section);
    } else if (name.rfind("env:", 0) == 0) {
      cfg.environments.push_back(parse_environment_section(name.substr(4), section, base_dir));
    } else {
      for (const auto& [key, node] : section) apply_setting(cfg.mission, name, key, node.data());
    }
  }
  if (cfg.environments.empty()) throw ConfigError("no [env:<name>] section");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", file.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), file.parent_path());
}

GroundTruthMap materialize_environment(const EnvironmentSpec& spec) {
  GroundTruthMap base = spec.generate ? generate_environment(*spec.generate, spec.generator_seed, spec.resolution)
                                      : load_map_file(spec.map_path.string());
  std::vector<Occupancy> cells(base.cells().begin(), base.cells().end());
  return GroundTruthMap(spec.name.empty() ? base.name() : spec.name, base.geometry(), std::move(cells),
                        spec.entries.empty() ? base.entry_points() : spec.entries);
}

}  // namespace explore
