#include "wrist/features.hpp"

#include <algorithm>
#include <cmath>

namespace wrist {

Degrees steady_state_angle(const Trajectory& traj, DegPerSec settle_velocity_dps,
                           Seconds min_hold_s) {
  if (traj.size() < 2) throw FeatureError("steady_state_angle: trajectory too short");

  // Last maximal run of quiet samples lasting at least min_hold_s.
  std::size_t best_begin = 0, best_end = 0;  // [begin, end)
  bool found = false;
  std::size_t i = 0;
  while (i < traj.size()) {
    if (std::abs(traj[i].velocity_dps) < settle_velocity_dps) {
      std::size_t j = i;
      while (j + 1 < traj.size() &&
             std::abs(traj[j + 1].velocity_dps) < settle_velocity_dps) {
        ++j;
      }
      if (traj[j].t - traj[i].t >= min_hold_s) {
        best_begin = i;
        best_end = j + 1;
        found = true;
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  if (!found) {
    throw FeatureError("steady_state_angle: no settled window of " +
                       std::to_string(min_hold_s) + " s");
  }
  double sum = 0.0;
  for (std::size_t k = best_begin; k < best_end; ++k) sum += traj[k].angle_deg;
  return sum / static_cast<double>(best_end - best_begin);
}

namespace {

/// First time the angle reaches `level` going upward, interpolated between samples.
double rising_crossing(const Trajectory& traj, double level, std::size_t from,
                       std::size_t* index_out) {
  for (std::size_t i = from; i + 1 < traj.size(); ++i) {
    const double a0 = traj[i].angle_deg;
    const double a1 = traj[i + 1].angle_deg;
    if (a0 < level && a1 >= level) {
      const double frac = (level - a0) / (a1 - a0);
      if (index_out) *index_out = i + 1;
      return traj[i].t + frac * (traj[i + 1].t - traj[i].t);
    }
  }
  throw FeatureError("ramp_midrange_rate: ramp never reaches required amplitude");
}

}  // namespace

DegPerSec ramp_midrange_rate(const Trajectory& traj, double window_lo, double window_hi) {
  if (traj.size() < 3) throw FeatureError("ramp_midrange_rate: trajectory too short");
  if (!(0.0 <= window_lo && window_lo < window_hi && window_hi <= 1.0)) {
    throw FeatureError("ramp_midrange_rate: bad window");
  }
  const double start = traj.front().angle_deg;
  const double end = traj.back().angle_deg;
  const double amplitude = end - start;
  if (amplitude <= 1e-6) {
    throw FeatureError("ramp_midrange_rate: no rising segment");
  }
  const double lo_level = start + window_lo * amplitude;
  const double hi_level = start + window_hi * amplitude;
  std::size_t after_lo = 0;
  const double t_lo = rising_crossing(traj, lo_level, 0, &after_lo);
  const double t_hi = rising_crossing(traj, hi_level, after_lo, nullptr);
  if (!(t_hi > t_lo)) throw FeatureError("ramp_midrange_rate: degenerate window");
  return (hi_level - lo_level) / (t_hi - t_lo);
}

}  // namespace wrist
