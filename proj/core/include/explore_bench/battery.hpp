#pragma once

#include <cstdint>

#include "explore_bench/robot_state.hpp"

namespace explore {

/// Hover current that drains a full pack to the fail-safe level in `endurance_min`.
double calibrated_hover_current(double capacity_ah, double endurance_min, double failsafe_percent);

struct BatteryParams {
  double v0 = 22.8;        // V, fully charged
  double gamma = 0.001;    // linear discharge coefficient
  double capacity = 4.28;  // Ah
  double resistance = 0.01;  // ohm
  double hover_current = calibrated_hover_current(4.28, 30.0, 5.0);  // A
  double k_linear = 2.0;     // A per m/s
  double k_angular = 1.5;    // A per rad/s
  double k_compute = 2e-7;   // A per (op/s)
  double failsafe_percent = 5.0;
};

/// V = V0 + gamma * ((1 - i_t) / Q) - R * i, taken as printed.
double output_voltage(double v0, double gamma, double capacity, double resistance, double discharged_ah,
                      double current);

/// i = i_hover + k_v |v| + k_w |w| + k_c * ops / dt.
double draw_current(const BatteryParams& params, const RobotState& motion, std::uint64_t compute_ops, double dt);

class BatteryState {
 public:
  explicit BatteryState(const BatteryParams& params = {});

  /// Accumulates i * dt / 3600 Ah and recomputes voltage and level.
  void discharge(double current, double dt);

  /// For tests and pre-drained starts.
  void set_level_percent(double percent);

  double v0() const { return params_.v0; }
  double gamma() const { return params_.gamma; }
  double capacity() const { return params_.capacity; }
  double resistance() const { return params_.resistance; }
  double discharged_ah() const { return discharged_ah_; }
  double current() const { return current_; }
  double voltage() const { return voltage_; }
  /// 100 * (1 - i_t / Q), clamped to [0, 100].
  double level_percent() const { return level_; }
  bool depleted() const { return level_ <= 0.0; }
  const BatteryParams& params() const { return params_; }

 private:
  void recompute();

  BatteryParams params_;
  double discharged_ah_ = 0.0;
  double current_ = 0.0;
  double voltage_ = 0.0;
  double level_ = 100.0;
};

BatteryState discharge_step(BatteryState b, double current, double dt);

/// Level at or below the fail-safe threshold.
bool failsafe_triggered(const BatteryState& b);

}  // namespace explore
