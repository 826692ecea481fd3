#include "wrist/haptics.hpp"

#include <algorithm>
#include <stdexcept>

namespace wrist {

MilliNewtonMeters wall_torque(Degrees angle, DegPerSec velocity, const WallPair& walls) {
  if (!walls.valid()) throw std::domain_error("wall_torque: invalid wall pair");
  double penetration_rad = 0.0;
  if (angle > walls.upper_deg) {
    penetration_rad = deg2rad(angle - walls.upper_deg);
  } else if (angle < walls.lower_deg) {
    penetration_rad = deg2rad(angle - walls.lower_deg);
  } else {
    return 0.0;
  }
  const double tau_nm =
      -walls.stiffness * penetration_rad - walls.damping * deg2rad(velocity);
  return nm2mnm(tau_nm);
}

Degrees smoothstep_angle(const TrajectorySpec& spec, Seconds t) {
  if (spec.duration_s <= 0.0) throw std::domain_error("smoothstep_angle: duration must be > 0");
  const double u = std::clamp(t / spec.duration_s, 0.0, 1.0);
  const double s = u * u * (3.0 - 2.0 * u);
  return spec.from_deg + (spec.to_deg - spec.from_deg) * s;
}

WallPair moving_gap(DegPerSec ref_velocity, Degrees gap_halfwidth, Degrees start_deg,
                    Degrees end_deg, Seconds t, double stiffness, double damping) {
  if (gap_halfwidth <= 0.0) throw std::domain_error("moving_gap: gap_halfwidth must be > 0");
  double center = start_deg + ref_velocity * t;
  if (ref_velocity >= 0.0) {
    center = std::min(center, end_deg);
  } else {
    center = std::max(center, end_deg);
  }
  return WallPair{.lower_deg = center - gap_halfwidth,
                  .upper_deg = center + gap_halfwidth,
                  .stiffness = stiffness,
                  .damping = damping};
}

MilliNewtonMeters torque_ramp(MilliNewtonMeters target, Seconds ramp_s, Seconds t) {
  if (ramp_s <= 0.0) throw std::domain_error("torque_ramp: ramp_s must be > 0");
  if (t <= 0.0) return 0.0;
  if (t >= ramp_s) return target;
  return target * (t / ramp_s);
}

MilliNewtonMeters home_torque(const PlantState& state, Degrees home_deg, double kp,
                              double kd) {
  if (kp <= 0.0 || kd < 0.0) throw std::domain_error("home_torque: require kp > 0, kd >= 0");
  const double tau_nm =
      kp * deg2rad(home_deg - state.angle_deg) - kd * deg2rad(state.velocity_dps);
  return nm2mnm(tau_nm);
}

}  // namespace wrist
