#pragma once

#include <numbers>

namespace wrist {

// Scalar unit conventions used across the toolkit. Angles are kept in
// degrees end to end (all reported measures are in degrees, deg/s, mNm);
// radians appear only inside dynamics integration and torque laws.
// Sign convention: pronation positive.
using Degrees = double;          // wrist rotation angle
using DegPerSec = double;        // angular velocity
using DegPerSec2 = double;       // angular acceleration
using MilliNewtonMeters = double;  // torque at the grip axis
using Seconds = double;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

constexpr double mnm2nm(double mnm) { return mnm * 1e-3; }
constexpr double nm2mnm(double nm) { return nm * 1e3; }

}  // namespace wrist
