#include "explore_bench/battery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace explore {

double calibrated_hover_current(double capacity_ah, double endurance_min, double failsafe_percent) {
  // (1 - failsafe) of the pack spent in endurance_min minutes.
  return (1.0 - failsafe_percent / 100.0) * capacity_ah / (endurance_min / 60.0);
}

double output_voltage(double v0, double gamma, double capacity, double resistance, double discharged_ah,
                      double current) {
  return v0 + gamma * ((1.0 - discharged_ah) / capacity) - resistance * current;
}

double draw_current(const BatteryParams& p, const RobotState& motion, std::uint64_t compute_ops, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("draw_current: dt must be positive");
  return p.hover_current + p.k_linear * std::abs(motion.linear_velocity) +
         p.k_angular * std::abs(motion.angular_velocity) +
         p.k_compute * (static_cast<double>(compute_ops) / dt);
}

BatteryState::BatteryState(const BatteryParams& params) : params_(params) {
  if (!(params_.capacity > 0.0)) throw std::invalid_argument("battery capacity must be positive");
  recompute();
}

void BatteryState::recompute() {
  voltage_ = output_voltage(params_.v0, params_.gamma, params_.capacity, params_.resistance, discharged_ah_,
                            current_);
  level_ = std::clamp(100.0 * (1.0 - discharged_ah_ / params_.capacity), 0.0, 100.0);
}

void BatteryState::discharge(double current, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("discharge: dt must be positive");
  if (current < 0.0) throw std::invalid_argument("discharge: current must be non-negative");
  current_ = current;
  discharged_ah_ += current * dt / 3600.0;
  recompute();
}

void BatteryState::set_level_percent(double percent) {
  discharged_ah_ = (1.0 - std::clamp(percent, 0.0, 100.0) / 100.0) * params_.capacity;
  recompute();
}

BatteryState discharge_step(BatteryState b, double current, double dt) {
  b.discharge(current, dt);
  return b;
}

bool failsafe_triggered(const BatteryState& b) {
  // Absorbs rounding in 100 * (1 - i_t / Q) at the exact threshold.
  return b.level_percent() <= b.params().failsafe_percent + 1e-9;
}

}  // namespace explore
