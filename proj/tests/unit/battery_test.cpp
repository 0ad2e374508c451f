#include <gtest/gtest.h>

#include <cmath>

#include "explore_bench/battery.hpp"

namespace explore {
namespace {

TEST(DrawCurrent, RestIsHoverCurrent) {
  const BatteryParams p;
  EXPECT_EQ(draw_current(p, RobotState{}, 0, 0.1), p.hover_current);
}

TEST(DrawCurrent, ComputeTermIsLinear) {
  const BatteryParams p;
  const double base = draw_current(p, RobotState{}, 0, 0.1);
  const double one = draw_current(p, RobotState{}, 1000, 0.1) - base;
  const double two = draw_current(p, RobotState{}, 2000, 0.1) - base;
  EXPECT_NEAR(two, 2.0 * one, 1e-12);
  EXPECT_NEAR(one, p.k_compute * 1000 / 0.1, 1e-12);
}

TEST(DrawCurrent, MotionTermsUseMagnitudes) {
  const BatteryParams p;
  RobotState s;
  s.linear_velocity = -0.1;
  s.angular_velocity = -0.5;
  EXPECT_DOUBLE_EQ(draw_current(p, s, 0, 0.1), p.hover_current + p.k_linear * 0.1 + p.k_angular * 0.5);
}

TEST(Battery, HoverEnduranceMatchesCalibration) {
  const BatteryParams p;
  const double closed_form_min = 0.95 * p.capacity / p.hover_current * 60.0;
  EXPECT_NEAR(closed_form_min, 30.0, 1e-9);

  BatteryState b(p);
  const double dt = 0.1;
  long steps = 0;
  while (!failsafe_triggered(b)) {
    b.discharge(draw_current(p, RobotState{}, 0, dt), dt);
    ++steps;
  }
  const double minutes = static_cast<double>(steps) * dt / 60.0;
  EXPECT_NEAR(minutes, 30.0, 1.5);
  EXPECT_NEAR(minutes, closed_form_min, dt / 60.0 + 1e-9);
}

TEST(Battery, FullDrainInOneStep) {
  BatteryState b;
  const double dt = 0.1;
  b.discharge(b.capacity() * 3600.0 / dt, dt);
  EXPECT_EQ(b.level_percent(), 0.0);
  EXPECT_TRUE(b.depleted());
}

TEST(Battery, ZeroCurrentLeavesStateUnchanged) {
  BatteryState b;
  b.discharge(3.0, 10.0);
  const double v = b.voltage(), level = b.level_percent(), it = b.discharged_ah();
  BatteryState c = b;
  c.discharge(3.0, 1e-9);  // same draw
  b.discharge(0.0, 5.0);
  EXPECT_EQ(b.level_percent(), level);
  EXPECT_EQ(b.discharged_ah(), it);
  // The resistive term follows the instantaneous current.
  EXPECT_NEAR(b.voltage(), v + b.resistance() * 3.0, 1e-12);
  EXPECT_NEAR(c.voltage(), v, 1e-9);
}

TEST(Battery, ConstantCurrentClosedForm) {
  BatteryState b;
  const double i = 7.3, dt = 0.1;
  const int n = 5000;
  for (int k = 0; k < n; ++k) b = discharge_step(b, i, dt);
  EXPECT_NEAR(b.discharged_ah(), n * i * dt / 3600.0, 1e-12);
  EXPECT_NEAR(b.level_percent(), 100.0 * (1.0 - n * i * dt / 3600.0 / b.capacity()), 1e-9);
}

TEST(Battery, VoltageIdentityHoldsEveryStep) {
  BatteryState b;
  for (int k = 0; k < 1000; ++k) {
    const double i = 5.0 + 3.0 * std::sin(k * 0.1) * std::sin(k * 0.1);
    b.discharge(i, 0.1);
    const double expect =
        b.v0() + b.gamma() * ((1.0 - b.discharged_ah()) / b.capacity()) - b.resistance() * b.current();
    EXPECT_NEAR(b.voltage(), expect, 1e-12);
  }
}

TEST(Battery, LevelIsNonIncreasingAndBounded) {
  BatteryState b;
  double last = b.level_percent();
  EXPECT_EQ(last, 100.0);
  for (int k = 0; k < 200; ++k) {
    b.discharge(20.0 + k, 1.0);
    EXPECT_LE(b.level_percent(), last);
    EXPECT_GE(b.level_percent(), 0.0);
    last = b.level_percent();
  }
  EXPECT_EQ(last, 0.0);
}

TEST(Failsafe, ThresholdIsInclusive) {
  BatteryState b;
  b.set_level_percent(5.0001);
  EXPECT_FALSE(failsafe_triggered(b));
  b.set_level_percent(5.0);
  EXPECT_TRUE(failsafe_triggered(b));
  b.set_level_percent(4.0);
  EXPECT_TRUE(failsafe_triggered(b));
}

TEST(Battery, RejectsInvalidInput) {
  BatteryState b;
  EXPECT_THROW(b.discharge(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(b.discharge(-1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(draw_current(BatteryParams{}, RobotState{}, 0, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace explore
