#include "wrist/observer.hpp"

#include <cmath>
#include <stdexcept>

namespace wrist {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double p_respond_different(double delta, const ObserverModel& model) {
  if (!model.valid()) throw std::domain_error("p_respond_different: invalid observer model");
  const double sd = model.sigma * std::sqrt(2.0);
  // P(|D| > c), D ~ N(delta, 2 sigma^2)
  const double p_raw =
      (1.0 - normal_cdf((model.criterion_c - delta) / sd)) +
      normal_cdf((-model.criterion_c - delta) / sd);
  return model.lapse_rate / 2.0 + (1.0 - model.lapse_rate) * p_raw;
}

double solve_convergence_delta(const ObserverModel& model, double lo, double hi) {
  const double target = std::pow(0.5, 1.0 / 3.0);
  if (p_respond_different(hi, model) < target) return hi;
  if (p_respond_different(lo, model) >= target) return lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (p_respond_different(mid, model) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool respond_2ifc_correct(double stim_ref, double stim_cmp, const ObserverModel& model,
                          Rng& rng) {
  if (!model.valid()) throw std::domain_error("respond_2ifc_correct: invalid observer model");
  bool says_different;
  if (model.lapse_rate > 0.0 && rng.bernoulli(model.lapse_rate)) {
    says_different = rng.bernoulli(0.5);
  } else {
    const double perceived =
        (stim_cmp - stim_ref) + rng.normal(0.0, model.sigma * std::sqrt(2.0));
    says_different = std::abs(perceived) > model.criterion_c;
  }
  return says_different;
}

double reproduce_value(double target, const ObserverModel& model, Rng& rng) {
  double v = target + model.repro_bias;
  if (model.repro_noise_sd > 0.0) v += rng.normal(0.0, model.repro_noise_sd);
  return v;
}

Degrees point_gauge(Degrees true_angle, const ObserverModel& model, Rng& rng) {
  double reading = true_angle;
  if (model.gauge_noise_sd > 0.0) reading += rng.normal(0.0, model.gauge_noise_sd);
  return std::round(reading);  // protractor has whole-degree resolution
}

}  // namespace wrist
