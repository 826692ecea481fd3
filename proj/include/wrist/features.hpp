#pragma once

#include <stdexcept>
#include <vector>

#include "wrist/units.hpp"

namespace wrist {

struct TrajectorySample {
  Seconds t = 0.0;
  Degrees angle_deg = 0.0;
  DegPerSec velocity_dps = 0.0;
};

using Trajectory = std::vector<TrajectorySample>;

/// Raised when a trajectory lacks the feature being extracted; the caller
/// excludes the trial from its mean error and logs it.
class FeatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mean angle over the last window where |velocity| stays below
/// settle_velocity_dps for at least min_hold_s.
Degrees steady_state_angle(const Trajectory& traj, DegPerSec settle_velocity_dps = 2.0,
                           Seconds min_hold_s = 0.5);

/// Average rate of angle change across the midrange of the rising ramp:
/// (angle at 80% amplitude - angle at 20%) / elapsed time, with crossing
/// times interpolated between samples. The window endpoints cut off the
/// ease-in/ease-out transitions and any end overshoot.
DegPerSec ramp_midrange_rate(const Trajectory& traj, double window_lo = 0.2,
                             double window_hi = 0.8);

}  // namespace wrist
