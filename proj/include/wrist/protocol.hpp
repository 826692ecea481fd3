#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wrist/adl.hpp"
#include "wrist/csv.hpp"
#include "wrist/features.hpp"
#include "wrist/haptics.hpp"
#include "wrist/observer.hpp"
#include "wrist/participant.hpp"
#include "wrist/plant.hpp"
#include "wrist/staircase.hpp"
#include "wrist/units.hpp"

namespace wrist {

enum class BlockKind {
  GaugeMatch,
  PosDiscrim,
  VelDiscrim,
  TorqueDiscrim,
  PosAdjust,
  VelAdjust,
  KettleADL,
  DoorADL,
};

const char* to_string(BlockKind k);

/// Fixed presentation timing shared by all psychometric blocks.
struct TrialTiming {
  Seconds hold_s = 2.0;
  Seconds inter_interval_s = 1.75;
};

/// Everything a simulated participant brings to the session: declared motion
/// limits, clinical-score stand-ins, and per-channel observer models. The
/// gauge channel is its own model because contralateral pointing engages a
/// different reporting pathway than ipsilateral reproduction.
struct ParticipantProfile {
  int pid = 1;
  double age = 30.0;
  std::string gender = "F";
  double handedness_li = 100.0;
  int emnsa = 8;
  int fma_hw = 30;
  int moca = 28;

  Degrees pron_limit_deg = 58.0;
  Degrees sup_limit_deg = -58.0;
  Degrees neutral_deg = 0.0;

  ObserverModel pos_model;
  ObserverModel vel_model;
  ObserverModel torque_model;
  ObserverModel gauge_model;

  // ADL behavior
  Degrees kettle_tilt_excess_deg = 20.0;  // working tilt above pour threshold
  double kettle_fill_wobble = 0.02;       // sd of the intended stop fill
  Seconds kettle_reaction_s = 0.4;
  Seconds door_action_s = 2.0;   // typical time per button/rotation action
  double door_action_jitter = 0.3;
  double door_fumble_p = 0.15;   // chance of a wasted rotation per action
};

struct ProtocolConfig {
  PlantParams plant;
  TrialTiming timing;

  // Staircase shapes; `reference` is filled per participant at block start.
  StaircaseConfig pos_staircase{.initial_delta = 8.0, .step_down = 1.0, .step_up = 1.0,
                                .delta_floor = 1.51, .delta_ceiling = 20.0};
  StaircaseConfig vel_staircase{.initial_delta = 16.0, .step_down = 1.5, .step_up = 1.5,
                                .delta_floor = 0.5, .delta_ceiling = 40.0};
  StaircaseConfig torque_staircase{.initial_delta = 150.0, .step_down = 15.0, .step_up = 15.0,
                                   .delta_floor = 5.0, .delta_ceiling = 300.0};

  int gauge_presentations = 20;
  double gauge_span_fraction = 0.90;  // central share of cROM covered by targets

  int adjustment_trials = 21;
  double pos_adjust_lo_frac = 0.10;  // of the pronation limit
  double pos_adjust_hi_frac = 0.90;
  DegPerSec vel_adjust_lo_dps = 15.0;
  DegPerSec vel_adjust_hi_dps = 90.0;

  Degrees torque_hold_tolerance_deg = 5.0;
  Seconds torque_ramp_s = 0.5;
  int max_ignored_trials = 150;  // gives up and marks the block incomplete

  Seconds move_duration_s = 1.2;      // robot smoothstep drives
  Seconds user_move_duration_s = 1.5; // observer reproduction motions
  Seconds user_hold_s = 1.2;
  Seconds pre_motion_hold_s = 0.3;    // plateau before velocity ramps

  double track_kp = 10.0, track_kd = 0.3;  // robot trajectory PD, N m/rad
  double human_kp = 8.0, human_kd = 0.4;   // simulated user PD
  double hold_kp = 20.0, hold_kd = 0.5;    // isometric hold against torque
  MilliNewtonMeters gravity_comp_mnm = 0.0;

  double wall_stiffness = 30.0;
  double wall_damping = 0.3;
  Degrees gap_halfwidth_deg = 1.5;

  adl::KettleParams kettle;
};

struct BlockResult {
  BlockKind kind = BlockKind::GaugeMatch;
  bool complete = false;
  double measure = std::numeric_limits<double>::quiet_NaN();
  double weber_pct = std::numeric_limits<double>::quiet_NaN();  // discrimination only
  int trials_completed = 0;
  int ignored_trials = 0;
  std::string termination;  // staircase stop reason or block note
  std::vector<double> reversal_trace;
  csv::Table trials;  // per-trial log, CSV-ready
};

/// cROM = pronation limit - supination limit; throws std::domain_error when
/// the limits are inverted. The neutral angle is the declared resting angle.
std::pair<Degrees, Degrees> measure_crom(Degrees pron_limit, Degrees sup_limit,
                                         Degrees declared_neutral);

BlockResult run_gauge_block(const ParticipantProfile& profile, const ProtocolConfig& config,
                            Rng& rng);

BlockResult run_discrimination_block(BlockKind kind, const ParticipantProfile& profile,
                                     const ProtocolConfig& config, Rng& rng);

BlockResult run_adjustment_block(BlockKind kind, const ParticipantProfile& profile,
                                 const ProtocolConfig& config, Rng& rng);

BlockResult run_kettle_block(const ParticipantProfile& profile, const ProtocolConfig& config,
                             Rng& rng);

BlockResult run_door_block(const ParticipantProfile& profile, const ProtocolConfig& config,
                           Rng& rng);

/// Session order: gauge matching first, one ADL right after it, the second
/// ADL in the middle of the remaining robotic blocks, psychometric blocks
/// rotated across participants so every block visits every slot evenly.
std::vector<BlockKind> counterbalance_order(int participant_index, std::uint64_t seed);

struct SessionResult {
  ParticipantRecord record;
  ReferenceSet refs;
  std::vector<BlockKind> order;
  std::vector<BlockResult> blocks;
  std::vector<std::string> issues;  // propagated block problems, session continued
};

SessionResult run_session(const ParticipantProfile& profile, const ProtocolConfig& config,
                          std::uint64_t seed, int participant_index = 0);

/// Heterogeneous simulated cohort with plausible psychometric spreads.
std::vector<ParticipantProfile> make_default_profiles(int count, std::uint64_t seed);

}  // namespace wrist
