#pragma once

#include "wrist/plant.hpp"
#include "wrist/units.hpp"

namespace wrist {

/// Pair of one-sided virtual walls bounding a free gap.
struct WallPair {
  Degrees lower_deg = 0.0;
  Degrees upper_deg = 0.0;
  double stiffness = 30.0;  // N m/rad, stable at 1 kHz with the default plant
  double damping = 0.3;     // N m s/rad, applied only while penetrating

  bool valid() const { return lower_deg <= upper_deg && stiffness > 0.0; }
};

struct TrajectorySpec {
  Degrees from_deg = 0.0;
  Degrees to_deg = 0.0;
  Seconds duration_s = 1.0;
};

/// Spring-damper restoring torque outside the gap, zero inside.
MilliNewtonMeters wall_torque(Degrees angle, DegPerSec velocity, const WallPair& walls);

/// Cubic ease-in/ease-out between endpoints; t clamped to [0, duration].
Degrees smoothstep_angle(const TrajectorySpec& spec, Seconds t);

/// Wall pair whose gap center travels at ref_velocity from start toward
/// end_deg, holding once it arrives. Gap width is preserved throughout.
WallPair moving_gap(DegPerSec ref_velocity, Degrees gap_halfwidth, Degrees start_deg,
                    Degrees end_deg, Seconds t, double stiffness = 30.0,
                    double damping = 0.3);

/// Linear ramp from zero to target over ramp_s, constant afterwards.
MilliNewtonMeters torque_ramp(MilliNewtonMeters target, Seconds ramp_s, Seconds t);

/// PD drive toward a home angle. Gains in N m/rad and N m s/rad.
MilliNewtonMeters home_torque(const PlantState& state, Degrees home_deg, double kp,
                              double kd);

inline constexpr Degrees kDefaultGapHalfwidthDeg = 1.5;
inline constexpr double kDefaultHomeKp = 5.0;
inline constexpr double kDefaultHomeKd = 0.25;
inline constexpr Seconds kDefaultTorqueRampS = 0.5;

}  // namespace wrist
