#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "wrist/units.hpp"

namespace wrist::adl {

// ---------------------------------------------------------------------------
// Kettle pouring: interface rotation tilts the kettle, tilt beyond the
// threshold pours at a rate proportional to the excess angle. The trial
// succeeds when the fill sits inside the target band at the time limit.
// ---------------------------------------------------------------------------

struct KettleParams {
  Degrees tilt_threshold_deg = 20.0;
  double flow_gain = 0.02;        // fill-units per second per degree beyond threshold
  double cup_capacity = 1.0;
  double target_low = 0.7;
  double target_high = 0.9;
  Seconds time_limit_s = 20.0;

  bool valid() const {
    return 0.0 < target_low && target_low < target_high && target_high <= cup_capacity &&
           flow_gain > 0.0 && time_limit_s > 0.0;
  }
};

enum class KettleOutcome { InProgress, Success, Overfilled, Underfilled };

struct KettleState {
  double fill = 0.0;
  Seconds elapsed = 0.0;
  Seconds last_flow_t = 0.0;  // time of the most recent fill activity
  KettleOutcome outcome = KettleOutcome::InProgress;
};

/// Advances the pour by dt at the given tilt. Throws std::logic_error when
/// stepping a terminal state.
KettleState kettle_step(const KettleState& state, const KettleParams& params, Degrees tilt,
                        Seconds dt);

// ---------------------------------------------------------------------------
// Door opening: hand-avatar interaction abstracted to two buttons plus grip
// rotation. The transition relation is a DAG from Start to DoorOpen; events
// not enabled in a state are no-ops.
// ---------------------------------------------------------------------------

enum class DoorState {
  Start,
  KnobGrasped,
  KnobTurnedLocked,
  NearKey,
  KeyGrasped,
  KeyAtKeyhole,
  KeyInserted,
  DeadboltUnlocked,
  KnobGraspedUnlocked,
  KnobTurnedOpen,
  DoorOpen,
};
inline constexpr int kDoorStateCount = 11;

enum class DoorEvent { BluePress, YellowPress, RotatePastThreshold, RotateBack };
inline constexpr int kDoorEventCount = 4;

DoorState door_transition(DoorState state, DoorEvent event);

const char* to_string(DoorState s);
const char* to_string(DoorEvent e);

/// The scripted button/rotation sequence an unhesitating user would perform
/// (one press per depicted action; includes one press the model ignores).
const std::vector<DoorEvent>& optimal_door_sequence();

// ---------------------------------------------------------------------------
// Trial runner
// ---------------------------------------------------------------------------

enum class AdlKind { Kettle, Door };

struct AdlLogEntry {
  Seconds t = 0.0;
  std::string input;  // tilt in degrees, or event name
  std::string state;
  double fill = 0.0;
};

struct AdlResult {
  bool success = false;
  Seconds completion_time = 0.0;  // Tk = last fill activity; Td = Start to DoorOpen
  KettleOutcome kettle_outcome = KettleOutcome::InProgress;  // kettle trials only
  std::vector<AdlLogEntry> log;
};

/// Controller supplying the tilt trace for kettle trials: tilt(state, t).
using KettleController = std::function<Degrees(const KettleState&, Seconds)>;

/// Controller supplying a timed event stream for door trials.
struct TimedDoorEvent {
  Seconds t = 0.0;
  DoorEvent event = DoorEvent::BluePress;
};

AdlResult run_kettle(const KettleController& controller, const KettleParams& params,
                     Seconds dt = 0.01);

/// Executes the event stream; completion time is the timestamp of the event
/// that reaches DoorOpen. Throws std::runtime_error when the stream ends (or
/// the time cap passes) before the door opens.
AdlResult run_door(const std::vector<TimedDoorEvent>& events, Seconds time_cap_s = 600.0);

}  // namespace wrist::adl
