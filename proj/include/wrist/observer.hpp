#pragma once

#include <cstdint>

#include "wrist/rng.hpp"
#include "wrist/units.hpp"

namespace wrist {

/// Parametric stand-in for a human participant on one sensory channel.
/// The same-different decision follows a Gaussian internal-difference model:
/// the perceived difference of two stimuli delta apart is N(delta, 2*sigma^2)
/// and "different" is reported when it exceeds the criterion.
struct ObserverModel {
  double sigma = 1.0;        // sensory noise, stimulus units
  double criterion_c = 1.0;  // same-different decision bound, >= 0
  double lapse_rate = 0.0;   // probability of a random response, [0, 0.5)
  double repro_bias = 0.0;   // additive bias when reproducing a magnitude
  double repro_noise_sd = 0.0;
  double gauge_noise_sd = 0.0;    // contralateral pointing noise, degrees
  double hold_noise_sd_deg = 0.0; // wander while holding against torque
  std::uint64_t rng_seed = 0;

  bool valid() const {
    return sigma > 0.0 && criterion_c >= 0.0 && lapse_rate >= 0.0 && lapse_rate < 0.5;
  }
};

/// Closed-form probability that the observer reports "different" for a pair
/// of stimuli delta apart, including the lapse mixture. Monotone
/// non-decreasing in delta for delta >= 0.
double p_respond_different(double delta, const ObserverModel& model);

/// Smallest delta at which p_respond_different reaches the 3-down-1-up
/// convergence probability (1/2)^(1/3); solved by bisection on [lo, hi].
/// Returns hi if even hi cannot reach it (degenerate parameter sets).
double solve_convergence_delta(const ObserverModel& model, double lo, double hi);

/// Samples one 2-interval same-different trial. The comparison always
/// differs from the reference, so a "different" report is scored correct.
bool respond_2ifc_correct(double stim_ref, double stim_cmp, const ObserverModel& model,
                          Rng& rng);

/// Intended magnitude when the observer reproduces a target (position
/// amplitude or velocity slope): target + bias + noise.
double reproduce_value(double target, const ObserverModel& model, Rng& rng);

/// Gauge pointer report: noisy reading rounded to whole degrees.
Degrees point_gauge(Degrees true_angle, const ObserverModel& model, Rng& rng);

}  // namespace wrist
