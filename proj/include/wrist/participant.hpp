#pragma once

#include <string>
#include <vector>

#include "wrist/csv.hpp"
#include "wrist/units.hpp"

namespace wrist {

/// Per-participant reference stimuli for the three discrimination tasks.
/// Position scales with the individual's comfortable range of motion,
/// velocity and torque references are fixed.
struct ReferenceSet {
  Degrees pos_ref_deg = 0.0;
  DegPerSec vel_ref_dps = 0.0;
  MilliNewtonMeters torque_ref_mnm = 0.0;
};

inline constexpr double kPosRefCromFraction = 0.30;
inline constexpr DegPerSec kVelRefDps = 60.0;
inline constexpr MilliNewtonMeters kTorqueRefMnm = 500.0;

/// pos = 30% of cROM in pronation, vel = 60 deg/s, torque = 500 mNm.
/// Throws std::domain_error for non-positive cROM.
ReferenceSet derive_reference_stimuli(Degrees crom_deg);

/// One row of the participant table: clinical scores plus robotic measures.
struct ParticipantRecord {
  int pid = 0;
  double age = 0.0;
  std::string gender;
  double handedness_li = 0.0;  // laterality index, right-positive, [-100, 100]
  int emnsa = 0;               // proprioception subscore, 0..8
  int fma_hw = 0;              // hand/wrist subscore, 0..30
  int moca = 0;                // cognitive score, 0..30
  Degrees neutral_deg = 0.0;
  Degrees crom_deg = 0.0;
  Degrees meg_deg = 0.0;       // gauge matching error
  Degrees jndp_deg = 0.0;      // position JND
  double kp_pct = 0.0;         // position Weber fraction
  DegPerSec jndv_dps = 0.0;    // velocity JND
  double kv_pct = 0.0;
  MilliNewtonMeters jndt_mnm = 0.0;  // torque JND
  double kt_pct = 0.0;
  Degrees mep_deg = 0.0;       // position reproduction error
  DegPerSec mev_dps = 0.0;     // velocity reproduction error
  Seconds tk_s = 0.0;          // kettle completion time
  Seconds td_s = 0.0;          // door completion time
};

/// Tolerance absorbing two-decimal rounding in published Weber fractions.
inline constexpr double kWeberConsistencyTol = 0.02;

/// Returns one human-readable violation per failed invariant; empty means valid.
std::vector<std::string> validate_participant(const ParticipantRecord& rec);

/// Canonical column order of the participant CSV schema.
const std::vector<std::string>& participant_columns();

csv::Table to_table(const std::vector<ParticipantRecord>& recs);
std::vector<ParticipantRecord> from_table(const csv::Table& t);

std::vector<ParticipantRecord> load_participants(const std::string& path);
void save_participants(const std::vector<ParticipantRecord>& recs, const std::string& path);

}  // namespace wrist
