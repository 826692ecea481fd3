#include "wrist/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace wrist {

PlantState step(const PlantState& state, const PlantParams& params,
                MilliNewtonMeters motor_torque, MilliNewtonMeters human_torque) {
  if (!params.valid()) throw std::domain_error("plant step: invalid params");
  if (!std::isfinite(motor_torque) || !std::isfinite(human_torque)) {
    throw std::domain_error("plant step: non-finite torque input");
  }

  const double theta = deg2rad(state.angle_deg);
  const double omega = deg2rad(state.velocity_dps);
  const double lim = deg2rad(params.limiter_deg);

  double tau = mnm2nm(motor_torque) + mnm2nm(human_torque) - params.damping_b * omega;
  if (theta > lim) {
    tau += -params.limiter_stiffness * (theta - lim) - params.limiter_damping * omega;
  } else if (theta < -lim) {
    tau += -params.limiter_stiffness * (theta + lim) - params.limiter_damping * omega;
  }

  const double omega_next = omega + params.dt_s * tau / params.inertia_j;
  const double theta_next = theta + params.dt_s * omega_next;

  return PlantState{
      .angle_deg = rad2deg(theta_next),
      .velocity_dps = rad2deg(omega_next),
      .t = state.t + params.dt_s,
  };
}

Degrees encode_position(Degrees angle, int counts_per_rev) {
  if (counts_per_rev <= 0) throw std::domain_error("encode_position: counts_per_rev must be > 0");
  const double step_deg = 360.0 / counts_per_rev;
  return std::floor(angle / step_deg) * step_deg;
}

Butterworth2::Butterworth2(double cutoff_hz, double sample_hz) {
  if (cutoff_hz <= 0.0 || sample_hz <= 0.0 || cutoff_hz >= 0.5 * sample_hz) {
    throw std::domain_error("Butterworth2: cutoff must lie in (0, Nyquist)");
  }
  // Bilinear transform of 1/(s^2/wc^2 + sqrt(2) s/wc + 1) with prewarped cutoff.
  const double T = 1.0 / sample_hz;
  const double wc = 2.0 / T * std::tan(kPi * cutoff_hz * T);
  const double k = wc * T;
  const double den = k * k + 2.0 * std::sqrt(2.0) * k + 4.0;
  b0_ = k * k / den;
  b1_ = 2.0 * b0_;
  b2_ = b0_;
  a1_ = (2.0 * k * k - 8.0) / den;
  a2_ = (k * k - 2.0 * std::sqrt(2.0) * k + 4.0) / den;
  initialized_ = true;
}

double Butterworth2::filter(double x) {
  if (!initialized_) throw std::logic_error("Butterworth2: filter used before configuration");
  const double y = b0_ * x + b1_ * x1_ + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
  x2_ = x1_;
  x1_ = x;
  y2_ = y1_;
  y1_ = y;
  return y;
}

DegPerSec DerivativeFilter::estimate(Degrees quantized_angle, Seconds dt) {
  if (dt <= 0.0) throw std::domain_error("DerivativeFilter: dt must be > 0");
  double raw_vel = 0.0;
  if (prev_angle_) {
    raw_vel = (quantized_angle - *prev_angle_) / dt;
  }
  prev_angle_ = quantized_angle;
  const double raw_acc = (raw_vel - prev_raw_vel_) / dt;
  prev_raw_vel_ = raw_vel;
  velocity_dps_ = vel_lp_.filter(raw_vel);
  accel_dps2_ = acc_lp_.filter(raw_acc);
  return velocity_dps_;
}

}  // namespace wrist
