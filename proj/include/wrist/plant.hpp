#pragma once

#include <optional>

#include "wrist/units.hpp"

namespace wrist {

/// Physical constants of the 1-DOF rotational device plus simulation step.
struct PlantParams {
  double inertia_j = 0.005;         // kg m^2, rotor + handle about the pronation axis
  double damping_b = 0.01;          // N m s/rad viscous friction
  Degrees limiter_deg = 60.0;       // hard-stop half range
  double limiter_stiffness = 50.0;  // N m/rad, one-sided contact spring
  double limiter_damping = 0.5;     // N m s/rad during contact
  int encoder_counts_per_rev = 16384;
  Seconds dt_s = 0.001;             // 1 kHz control loop
  double filter_cutoff_hz = 10.0;   // velocity estimator low-pass

  bool valid() const {
    return inertia_j > 0.0 && dt_s > 0.0 && encoder_counts_per_rev > 0 &&
           filter_cutoff_hz > 0.0 && filter_cutoff_hz < 0.5 / dt_s;
  }
};

struct PlantState {
  Degrees angle_deg = 0.0;
  DegPerSec velocity_dps = 0.0;
  Seconds t = 0.0;
};

/// One semi-implicit Euler step of J*acc = tau_motor + tau_human - b*vel + tau_limiter.
/// Limiter torque is zero strictly inside +/- limiter_deg.
/// Throws std::domain_error on non-finite torques or invalid params.
PlantState step(const PlantState& state, const PlantParams& params,
                MilliNewtonMeters motor_torque, MilliNewtonMeters human_torque);

/// Quantizes to the encoder grid (floor to the count below), returned in degrees.
Degrees encode_position(Degrees angle, int counts_per_rev);

/// Discrete 2nd-order Butterworth low-pass (bilinear transform, prewarped).
class Butterworth2 {
 public:
  Butterworth2() = default;
  Butterworth2(double cutoff_hz, double sample_hz);

  double filter(double x);
  bool initialized() const { return initialized_; }

 private:
  double b0_ = 0, b1_ = 0, b2_ = 0, a1_ = 0, a2_ = 0;
  double x1_ = 0, x2_ = 0, y1_ = 0, y2_ = 0;
  bool initialized_ = false;
};

/// Encoder-to-velocity signal chain: adjacent-sample difference followed by a
/// 2nd-order Butterworth low-pass. A second difference/filter stage produces
/// an acceleration signal for logging; no metric consumes it.
class DerivativeFilter {
 public:
  DerivativeFilter() = default;
  DerivativeFilter(double cutoff_hz, double sample_hz)
      : vel_lp_(cutoff_hz, sample_hz), acc_lp_(cutoff_hz, sample_hz) {}

  /// Feed the next quantized angle sample; returns the filtered velocity.
  /// Throws std::logic_error if constructed without a cutoff; std::domain_error if dt <= 0.
  DegPerSec estimate(Degrees quantized_angle, Seconds dt);

  DegPerSec velocity_dps() const { return velocity_dps_; }
  DegPerSec2 accel_dps2() const { return accel_dps2_; }

 private:
  Butterworth2 vel_lp_;
  Butterworth2 acc_lp_;
  std::optional<Degrees> prev_angle_;
  double prev_raw_vel_ = 0.0;
  DegPerSec velocity_dps_ = 0.0;
  DegPerSec2 accel_dps2_ = 0.0;
};

}  // namespace wrist
