#pragma once

#include <vector>

#include "wrist/units.hpp"

namespace wrist {

/// 3-down-1-up transformed weighted staircase. Step weights are configurable;
/// with step_up == step_down the track converges near the 79.4%-correct point.
struct StaircaseConfig {
  double reference = 0.0;      // modality units (deg, deg/s, mNm)
  double initial_delta = 0.0;  // first comparison offset above reference
  double step_down = 0.0;
  double step_up = 0.0;
  int n_down = 3;
  int max_trials = 50;
  int stop_reversals = 8;
  int jnd_reversals = 4;
  double delta_floor = 0.0;
  double delta_ceiling = 0.0;

  bool valid() const {
    return delta_floor > 0.0 && delta_floor <= initial_delta &&
           initial_delta <= delta_ceiling && step_down > 0.0 && step_up > 0.0 &&
           n_down >= 1 && max_trials >= 1 && stop_reversals >= 1 && jnd_reversals >= 1;
  }
};

enum class Response { Correct, Incorrect, Ignored };

enum class StaircaseStop { None, Reversals, MaxTrials };

struct StaircaseState {
  double current_delta = 0.0;
  int consecutive_correct = 0;
  int direction = 0;  // -1 descending, +1 ascending, 0 before any movement
  std::vector<double> reversal_deltas;
  int trials_completed = 0;
  int ignored_trials = 0;
  StaircaseStop stop = StaircaseStop::None;

  bool terminated() const { return stop != StaircaseStop::None; }
};

StaircaseState make_staircase(const StaircaseConfig& config);

/// Applies one response. Ignored responses leave the track untouched (the
/// same comparison is re-presented and the trial does not count). A movement
/// whose direction differs from the previous movement records the pre-change
/// delta as a reversal. Throws std::logic_error if already terminated.
StaircaseState staircase_update(const StaircaseState& state, const StaircaseConfig& config,
                                Response response);

struct JndResult {
  double jnd_abs = 0.0;
  double weber_pct = 0.0;
  std::vector<double> reversal_trace;
  int trials_used = 0;
};

/// JND = median of the last jnd_reversals reversal deltas (mean of the middle
/// pair for even counts). Throws std::runtime_error with fewer reversals.
JndResult staircase_jnd(const StaircaseState& state, const StaircaseConfig& config);

}  // namespace wrist
