#include "wrist/staircase.hpp"

#include <algorithm>
#include <stdexcept>

namespace wrist {

StaircaseState make_staircase(const StaircaseConfig& config) {
  if (!config.valid()) throw std::domain_error("make_staircase: invalid config");
  StaircaseState s;
  s.current_delta = config.initial_delta;
  return s;
}

StaircaseState staircase_update(const StaircaseState& state, const StaircaseConfig& config,
                                Response response) {
  if (state.terminated()) {
    throw std::logic_error("staircase_update: track already terminated");
  }
  StaircaseState s = state;

  if (response == Response::Ignored) {
    ++s.ignored_trials;
    return s;
  }

  ++s.trials_completed;
  int move = 0;
  if (response == Response::Correct) {
    ++s.consecutive_correct;
    if (s.consecutive_correct >= config.n_down) {
      s.consecutive_correct = 0;
      move = -1;
    }
  } else {
    s.consecutive_correct = 0;
    move = +1;
  }

  if (move != 0) {
    if (s.direction != 0 && move != s.direction) {
      s.reversal_deltas.push_back(s.current_delta);
    }
    s.direction = move;
    const double next = s.current_delta + (move < 0 ? -config.step_down : config.step_up);
    s.current_delta = std::clamp(next, config.delta_floor, config.delta_ceiling);
  }

  if (static_cast<int>(s.reversal_deltas.size()) >= config.stop_reversals) {
    s.stop = StaircaseStop::Reversals;
  } else if (s.trials_completed >= config.max_trials) {
    s.stop = StaircaseStop::MaxTrials;
  }
  return s;
}

JndResult staircase_jnd(const StaircaseState& state, const StaircaseConfig& config) {
  const int n = static_cast<int>(state.reversal_deltas.size());
  if (n < config.jnd_reversals) {
    throw std::runtime_error("staircase_jnd: only " + std::to_string(n) + " reversals, need " +
                             std::to_string(config.jnd_reversals));
  }
  std::vector<double> last(state.reversal_deltas.end() - config.jnd_reversals,
                           state.reversal_deltas.end());
  std::vector<double> sorted = last;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = (m % 2 == 1) ? sorted[m / 2]
                                     : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  JndResult r;
  r.jnd_abs = median;
  r.weber_pct = 100.0 * median / config.reference;
  r.reversal_trace = state.reversal_deltas;
  r.trials_used = state.trials_completed;
  return r;
}

}  // namespace wrist
