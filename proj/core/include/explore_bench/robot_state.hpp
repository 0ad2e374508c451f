#pragma once

#include "explore_bench/geometry.hpp"

namespace explore {

inline constexpr double kFlightAltitude = 0.3;

/// Planar unicycle state of the vehicle at fixed altitude.
struct RobotState {
  WorldPoint position{};
  double heading = 0.0;           // rad
  double linear_velocity = 0.0;   // m/s
  double angular_velocity = 0.0;  // rad/s
  double altitude = kFlightAltitude;

  bool operator==(const RobotState&) const = default;
};

}  // namespace explore
