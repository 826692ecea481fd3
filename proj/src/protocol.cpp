#include "wrist/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wrist {

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::GaugeMatch: return "gauge_match";
    case BlockKind::PosDiscrim: return "pos_discrim";
    case BlockKind::VelDiscrim: return "vel_discrim";
    case BlockKind::TorqueDiscrim: return "torque_discrim";
    case BlockKind::PosAdjust: return "pos_adjust";
    case BlockKind::VelAdjust: return "vel_adjust";
    case BlockKind::KettleADL: return "kettle_adl";
    case BlockKind::DoorADL: return "door_adl";
  }
  return "?";
}

std::pair<Degrees, Degrees> measure_crom(Degrees pron_limit, Degrees sup_limit,
                                         Degrees declared_neutral) {
  if (!(pron_limit > sup_limit)) {
    throw std::domain_error("measure_crom: pronation limit must exceed supination limit");
  }
  return {declared_neutral, pron_limit - sup_limit};
}

namespace {

constexpr const char* kResponseNames[] = {"correct", "incorrect", "ignored"};

std::string fmt(double v) { return csv::format_double(v); }

/// The simulated rig: plant truth plus the encoder/filter signal chain the
/// controllers actually see.
struct Rig {
  const ProtocolConfig* cfg;
  PlantState st;
  DerivativeFilter dfilt;
  Degrees meas_angle = 0.0;
  DegPerSec est_vel = 0.0;

  explicit Rig(const ProtocolConfig& c)
      : cfg(&c), dfilt(c.plant.filter_cutoff_hz, 1.0 / c.plant.dt_s) {
    meas_angle = encode_position(st.angle_deg, c.plant.encoder_counts_per_rev);
    est_vel = dfilt.estimate(meas_angle, c.plant.dt_s);
  }

  void advance(MilliNewtonMeters motor, MilliNewtonMeters human) {
    st = step(st, cfg->plant, motor + cfg->gravity_comp_mnm, human);
    meas_angle = encode_position(st.angle_deg, cfg->plant.encoder_counts_per_rev);
    est_vel = dfilt.estimate(meas_angle, cfg->plant.dt_s);
  }

  Seconds now() const { return st.t; }
};

/// Runs one fixed-duration phase; motor/human are functions of (rig, phase time).
template <typename MotorFn, typename HumanFn>
void run_phase(Rig& rig, Seconds duration, MotorFn motor, HumanFn human,
               Trajectory* rec = nullptr) {
  const Seconds dt = rig.cfg->plant.dt_s;
  const long steps = std::llround(duration / dt);
  for (long i = 0; i < steps; ++i) {
    const Seconds pt = static_cast<double>(i) * dt;
    rig.advance(motor(rig, pt), human(rig, pt));
    if (rec) rec->push_back({rig.now(), rig.meas_angle, rig.est_vel});
  }
}

MilliNewtonMeters track_pd(const Rig& rig, Degrees target, double kp, double kd) {
  return nm2mnm(kp * deg2rad(target - rig.meas_angle) - kd * deg2rad(rig.est_vel));
}

auto zero_torque = [](const Rig&, Seconds) -> MilliNewtonMeters { return 0.0; };

/// Robot drives the interface along a smoothstep to `target`; passive user.
void drive_to(Rig& rig, Degrees target, Seconds duration, Trajectory* rec = nullptr) {
  const TrajectorySpec spec{rig.meas_angle, target, duration};
  run_phase(
      rig, duration,
      [&](const Rig& r, Seconds pt) {
        return track_pd(r, smoothstep_angle(spec, pt), r.cfg->track_kp, r.cfg->track_kd);
      },
      zero_torque, rec);
}

/// Stiff walls hold the interface in place; passive user.
void hold_with_walls(Rig& rig, Degrees center, Seconds duration, Trajectory* rec = nullptr) {
  const WallPair walls{center - rig.cfg->gap_halfwidth_deg,
                       center + rig.cfg->gap_halfwidth_deg, rig.cfg->wall_stiffness,
                       rig.cfg->wall_damping};
  run_phase(
      rig, duration,
      [&](const Rig& r, Seconds) { return wall_torque(r.meas_angle, r.est_vel, walls); },
      zero_torque, rec);
}

void dwell_at_home(Rig& rig, Degrees home, Seconds duration) {
  run_phase(
      rig, duration,
      [&](const Rig& r, Seconds) {
        return track_pd(r, home, r.cfg->track_kp, r.cfg->track_kd);
      },
      zero_torque);
}

/// Position stimulus: drive to the angle, hold between walls, return home.
/// Returns the settled angle during the wall hold.
Degrees present_position_interval(Rig& rig, Degrees home, Degrees stim, Seconds* hold_dur) {
  drive_to(rig, stim, rig.cfg->move_duration_s);
  Trajectory hold;
  const Seconds t0 = rig.now();
  hold_with_walls(rig, stim, rig.cfg->timing.hold_s, &hold);
  if (hold_dur) *hold_dur = rig.now() - t0;
  const Degrees achieved = steady_state_angle(hold);
  drive_to(rig, home, rig.cfg->move_duration_s);
  return achieved;
}

/// Velocity stimulus: a wall gap sweeps from home to the position target at
/// the commanded rate, dragging the passive interface; hold, return home.
/// Returns the achieved midrange ramp rate.
DegPerSec present_velocity_interval(Rig& rig, Degrees home, Degrees pos_target,
                                    DegPerSec stim_vel, Seconds* hold_dur) {
  Trajectory trace;
  run_phase(
      rig, rig.cfg->pre_motion_hold_s,
      [&](const Rig& r, Seconds) {
        return track_pd(r, home, r.cfg->track_kp, r.cfg->track_kd);
      },
      zero_torque, &trace);

  const Degrees start = rig.meas_angle;
  const Seconds travel = std::abs(pos_target - start) / std::abs(stim_vel) + 0.5;
  run_phase(
      rig, travel,
      [&](const Rig& r, Seconds pt) {
        const WallPair walls =
            moving_gap(stim_vel, r.cfg->gap_halfwidth_deg, start, pos_target, pt,
                       r.cfg->wall_stiffness, r.cfg->wall_damping);
        return wall_torque(r.meas_angle, r.est_vel, walls);
      },
      zero_torque, &trace);

  const Seconds t0 = rig.now();
  hold_with_walls(rig, pos_target, rig.cfg->timing.hold_s, &trace);
  if (hold_dur) *hold_dur = rig.now() - t0;
  const DegPerSec achieved = ramp_midrange_rate(trace);
  drive_to(rig, home, rig.cfg->move_duration_s);
  return achieved;
}

/// Torque stimulus: ramp to the plateau while the user counteracts around a
/// (mis)perceived home. Returns false if the hold left the tolerance region.
bool present_torque_interval(Rig& rig, Degrees home, MilliNewtonMeters stim,
                             Degrees perceived_home, Seconds* hold_dur) {
  bool within = true;
  auto hold_human = [&](const Rig& r, Seconds) {
    return track_pd(r, perceived_home, r.cfg->hold_kp, r.cfg->hold_kd);
  };
  auto check = [&](const Rig& r) {
    if (std::abs(r.meas_angle - home) > r.cfg->torque_hold_tolerance_deg) within = false;
  };

  run_phase(
      rig, rig.cfg->torque_ramp_s,
      [&](const Rig& r, Seconds pt) {
        check(r);
        return torque_ramp(stim, r.cfg->torque_ramp_s, pt);
      },
      hold_human);
  const Seconds t0 = rig.now();
  run_phase(
      rig, rig.cfg->timing.hold_s,
      [&](const Rig& r, Seconds) {
        check(r);
        return stim;
      },
      hold_human);
  if (hold_dur) *hold_dur = rig.now() - t0;
  // release: user settles back to home
  run_phase(rig, 0.3, zero_torque, hold_human);
  return within;
}

struct DiscrimSpec {
  double reference = 0.0;
  Degrees home = 0.0;
  StaircaseConfig staircase;
  const ObserverModel* model = nullptr;
};

DiscrimSpec discrim_spec(BlockKind kind, const ParticipantProfile& profile,
                         const ProtocolConfig& config, const ReferenceSet& refs) {
  DiscrimSpec s;
  switch (kind) {
    case BlockKind::PosDiscrim:
      s.reference = refs.pos_ref_deg;
      s.home = profile.neutral_deg;
      s.staircase = config.pos_staircase;
      s.model = &profile.pos_model;
      break;
    case BlockKind::VelDiscrim:
      s.reference = refs.vel_ref_dps;
      s.home = profile.neutral_deg;
      s.staircase = config.vel_staircase;
      s.model = &profile.vel_model;
      break;
    case BlockKind::TorqueDiscrim:
      s.reference = refs.torque_ref_mnm;
      s.home = 0.0;
      s.staircase = config.torque_staircase;
      s.model = &profile.torque_model;
      break;
    default:
      throw std::domain_error("run_discrimination_block: not a discrimination kind");
  }
  s.staircase.reference = s.reference;
  return s;
}

}  // namespace

BlockResult run_gauge_block(const ParticipantProfile& profile, const ProtocolConfig& config,
                            Rng& rng) {
  BlockResult block;
  block.kind = BlockKind::GaugeMatch;
  block.trials.header = {"trial", "target_deg", "achieved_deg", "reported_deg",
                         "abs_error_deg"};

  const auto [neutral, crom] =
      measure_crom(profile.pron_limit_deg, profile.sup_limit_deg, profile.neutral_deg);
  const double margin = 0.5 * (1.0 - config.gauge_span_fraction) * crom;
  const Degrees lo = profile.sup_limit_deg + margin;
  const Degrees hi = profile.pron_limit_deg - margin;

  std::vector<Degrees> targets(config.gauge_presentations);
  for (int i = 0; i < config.gauge_presentations; ++i) {
    targets[i] = lo + (hi - lo) * static_cast<double>(i) /
                          static_cast<double>(config.gauge_presentations - 1);
  }
  rng.shuffle(targets);

  Rig rig(config);
  dwell_at_home(rig, neutral, 0.5);
  double error_sum = 0.0;
  int counted = 0;
  for (int i = 0; i < config.gauge_presentations; ++i) {
    const Degrees achieved = present_position_interval(rig, neutral, targets[i], nullptr);
    const Degrees reported = point_gauge(achieved + profile.gauge_model.repro_bias,
                                         profile.gauge_model, rng);
    const double err = std::abs(reported - achieved);
    error_sum += err;
    ++counted;
    block.trials.rows.push_back({std::to_string(i + 1), fmt(targets[i]), fmt(achieved),
                                 fmt(reported), fmt(err)});
  }
  block.measure = error_sum / counted;
  block.trials_completed = counted;
  block.complete = true;
  return block;
}

BlockResult run_discrimination_block(BlockKind kind, const ParticipantProfile& profile,
                                     const ProtocolConfig& config, Rng& rng) {
  BlockResult block;
  block.kind = kind;
  block.trials.header = {"trial",        "delta",        "ref_first",   "stim_ref",
                         "stim_cmp",     "achieved_ref", "achieved_cmp", "hold1_s",
                         "isi_s",        "hold2_s",      "response",    "reversal_flag",
                         "terminated_reason"};

  const auto [neutral, crom] =
      measure_crom(profile.pron_limit_deg, profile.sup_limit_deg, profile.neutral_deg);
  const ReferenceSet refs = derive_reference_stimuli(crom);
  const DiscrimSpec spec = discrim_spec(kind, profile, config, refs);

  StaircaseState track = make_staircase(spec.staircase);
  Rig rig(config);
  dwell_at_home(rig, spec.home, 0.5);

  int trial_no = 0;
  while (!track.terminated()) {
    ++trial_no;
    const double delta = track.current_delta;
    const double stim_cmp = spec.reference + delta;
    const bool ref_first = rng.bernoulli(0.5);
    const double first = ref_first ? spec.reference : stim_cmp;
    const double second = ref_first ? stim_cmp : spec.reference;

    drive_to(rig, spec.home, config.move_duration_s);

    double achieved_first = 0.0, achieved_second = 0.0;
    Seconds hold1 = 0.0, hold2 = 0.0;
    bool within = true;
    Degrees perceived_home_1 = spec.home, perceived_home_2 = spec.home;
    if (kind == BlockKind::TorqueDiscrim && profile.torque_model.hold_noise_sd_deg > 0.0) {
      perceived_home_1 += rng.normal(0.0, profile.torque_model.hold_noise_sd_deg);
      perceived_home_2 += rng.normal(0.0, profile.torque_model.hold_noise_sd_deg);
    }

    switch (kind) {
      case BlockKind::PosDiscrim:
        achieved_first = present_position_interval(rig, spec.home, first, &hold1);
        dwell_at_home(rig, spec.home, config.timing.inter_interval_s);
        achieved_second = present_position_interval(rig, spec.home, second, &hold2);
        break;
      case BlockKind::VelDiscrim:
        achieved_first =
            present_velocity_interval(rig, spec.home, refs.pos_ref_deg, first, &hold1);
        dwell_at_home(rig, spec.home, config.timing.inter_interval_s);
        achieved_second =
            present_velocity_interval(rig, spec.home, refs.pos_ref_deg, second, &hold2);
        break;
      case BlockKind::TorqueDiscrim: {
        const bool ok1 = present_torque_interval(rig, spec.home, first, perceived_home_1, &hold1);
        dwell_at_home(rig, spec.home, config.timing.inter_interval_s);
        const bool ok2 =
            present_torque_interval(rig, spec.home, second, perceived_home_2, &hold2);
        achieved_first = first;
        achieved_second = second;
        within = ok1 && ok2;
        break;
      }
      default:
        break;
    }

    const double achieved_ref = ref_first ? achieved_first : achieved_second;
    const double achieved_cmp = ref_first ? achieved_second : achieved_first;

    Response response;
    if (!within) {
      response = Response::Ignored;
    } else {
      response = respond_2ifc_correct(achieved_ref, achieved_cmp, *spec.model, rng)
                     ? Response::Correct
                     : Response::Incorrect;
    }

    const std::size_t reversals_before = track.reversal_deltas.size();
    track = staircase_update(track, spec.staircase, response);
    const bool reversal = track.reversal_deltas.size() > reversals_before;

    std::string reason;
    if (track.stop == StaircaseStop::Reversals) reason = "reversals";
    if (track.stop == StaircaseStop::MaxTrials) reason = "max_trials";
    block.trials.rows.push_back(
        {std::to_string(trial_no), fmt(delta), ref_first ? "1" : "0", fmt(spec.reference),
         fmt(stim_cmp), fmt(achieved_ref), fmt(achieved_cmp), fmt(hold1),
         fmt(config.timing.inter_interval_s), fmt(hold2), kResponseNames[static_cast<int>(response)],
         reversal ? "1" : "0", reason});

    if (track.ignored_trials >= config.max_ignored_trials) {
      block.termination = "too_many_ignored";
      break;
    }
  }

  block.trials_completed = track.trials_completed;
  block.ignored_trials = track.ignored_trials;
  block.reversal_trace = track.reversal_deltas;
  if (block.termination.empty()) {
    block.termination =
        track.stop == StaircaseStop::Reversals ? "reversals" : "max_trials";
  }

  try {
    const JndResult jnd = staircase_jnd(track, spec.staircase);
    block.measure = jnd.jnd_abs;
    block.weber_pct = jnd.weber_pct;
    block.complete = true;
  } catch (const std::runtime_error& e) {
    block.complete = false;
    block.termination += std::string("; ") + e.what();
  }
  return block;
}

BlockResult run_adjustment_block(BlockKind kind, const ParticipantProfile& profile,
                                 const ProtocolConfig& config, Rng& rng) {
  if (kind != BlockKind::PosAdjust && kind != BlockKind::VelAdjust) {
    throw std::domain_error("run_adjustment_block: not an adjustment kind");
  }
  BlockResult block;
  block.kind = kind;
  block.trials.header = {"trial",    "target",        "achieved_ref", "intended",
                         "achieved_user", "abs_error", "excluded"};

  const auto [neutral, crom] =
      measure_crom(profile.pron_limit_deg, profile.sup_limit_deg, profile.neutral_deg);
  const ReferenceSet refs = derive_reference_stimuli(crom);
  const bool position = kind == BlockKind::PosAdjust;
  const ObserverModel& model = position ? profile.pos_model : profile.vel_model;
  const Degrees home = position ? 0.0 : profile.neutral_deg;

  Rig rig(config);
  dwell_at_home(rig, home, 0.5);

  double error_sum = 0.0;
  int counted = 0;
  for (int trial = 1; trial <= config.adjustment_trials; ++trial) {
    const double target =
        position ? rng.uniform(config.pos_adjust_lo_frac * profile.pron_limit_deg,
                               config.pos_adjust_hi_frac * profile.pron_limit_deg)
                 : rng.uniform(config.vel_adjust_lo_dps, config.vel_adjust_hi_dps);

    double achieved_ref = 0.0;
    if (position) {
      achieved_ref = present_position_interval(rig, home, target, nullptr);
    } else {
      achieved_ref = present_velocity_interval(rig, home, refs.pos_ref_deg, target, nullptr);
    }
    dwell_at_home(rig, home, config.timing.inter_interval_s);

    // walls drop; the participant reproduces the stimulus from home
    const double intended_raw = reproduce_value(achieved_ref, model, rng);
    double achieved_user = 0.0;
    bool excluded = false;
    Trajectory user_trace;
    if (position) {
      const double intended =
          std::clamp(intended_raw, 2.0, profile.pron_limit_deg - 1.0);
      const TrajectorySpec user_spec{rig.meas_angle, intended, config.user_move_duration_s};
      run_phase(
          rig, config.user_move_duration_s + config.user_hold_s, zero_torque,
          [&](const Rig& r, Seconds pt) {
            return track_pd(r, smoothstep_angle(user_spec, pt), r.cfg->human_kp,
                            r.cfg->human_kd);
          },
          &user_trace);
    } else {
      const double intended = std::max(intended_raw, 3.0);
      const Degrees start = rig.meas_angle;
      const Degrees span = refs.pos_ref_deg - start;
      const Seconds ramp_t = std::abs(span) / intended;
      run_phase(
          rig, config.pre_motion_hold_s + ramp_t + config.user_hold_s, zero_torque,
          [&](const Rig& r, Seconds pt) {
            double target_angle;
            if (pt < config.pre_motion_hold_s) {
              target_angle = start;
            } else if (pt < config.pre_motion_hold_s + ramp_t) {
              target_angle = start + (pt - config.pre_motion_hold_s) * intended *
                                         (span >= 0 ? 1.0 : -1.0);
            } else {
              target_angle = refs.pos_ref_deg;
            }
            return track_pd(r, target_angle, r.cfg->human_kp, r.cfg->human_kd);
          },
          &user_trace);
    }

    try {
      achieved_user = position ? steady_state_angle(user_trace)
                               : ramp_midrange_rate(user_trace);
    } catch (const FeatureError&) {
      excluded = true;
    }

    double err = 0.0;
    if (!excluded) {
      err = std::abs(achieved_user - achieved_ref);
      error_sum += err;
      ++counted;
    }
    block.trials.rows.push_back({std::to_string(trial), fmt(target), fmt(achieved_ref),
                                 fmt(intended_raw), excluded ? "" : fmt(achieved_user),
                                 excluded ? "" : fmt(err), excluded ? "1" : "0"});

    // robot steadies the user for the next presentation
    drive_to(rig, home, config.move_duration_s);
  }

  block.trials_completed = config.adjustment_trials;
  if (counted > 0) {
    block.measure = error_sum / counted;
    block.complete = true;
  } else {
    block.termination = "all trials excluded";
  }
  return block;
}

BlockResult run_kettle_block(const ParticipantProfile& profile, const ProtocolConfig& config,
                             Rng& rng) {
  BlockResult block;
  block.kind = BlockKind::KettleADL;
  block.trials.header = {"t_s", "tilt_deg", "state", "fill"};

  const adl::KettleParams& kp = config.kettle;
  const Degrees work_tilt = kp.tilt_threshold_deg + profile.kettle_tilt_excess_deg;
  const double flow = kp.flow_gain * profile.kettle_tilt_excess_deg;
  const Seconds raise_s = 1.2, lower_s = 0.4;
  const double band = kp.target_high - kp.target_low;
  double stop_fill = kp.target_low + 0.4 * band +
                     profile.kettle_fill_wobble * rng.normal01() * band;
  stop_fill = std::clamp(stop_fill, kp.target_low + 0.25 * band, kp.target_high - 0.35 * band);
  // trailing pour while the tilt eases back down
  const double anticipation = 0.5 * flow * lower_s;

  Rig rig(config);
  adl::KettleState kettle;
  Seconds lower_started = -1.0;
  const Seconds dt = config.plant.dt_s;
  int decim = 0;
  while (kettle.outcome == adl::KettleOutcome::InProgress) {
    const Seconds t = kettle.elapsed;
    Degrees plan;
    if (t < profile.kettle_reaction_s) {
      plan = 0.0;
    } else if (lower_started < 0.0) {
      const TrajectorySpec up{0.0, work_tilt, raise_s};
      plan = smoothstep_angle(up, t - profile.kettle_reaction_s);
      if (kettle.fill >= stop_fill - anticipation) lower_started = t;
    } else {
      const TrajectorySpec down{work_tilt, 0.0, lower_s};
      plan = smoothstep_angle(down, t - lower_started);
    }
    rig.advance(0.0, track_pd(rig, plan, config.human_kp, config.human_kd));
    kettle = kettle_step(kettle, kp, rig.meas_angle, dt);
    if (++decim % 10 == 0) {
      block.trials.rows.push_back({fmt(kettle.elapsed), fmt(rig.meas_angle),
                                   std::string("pouring"), fmt(kettle.fill)});
    }
  }

  block.trials_completed = 1;
  block.complete = kettle.outcome == adl::KettleOutcome::Success;
  if (block.complete) {
    block.measure = kettle.last_flow_t;
  } else {
    block.termination = kettle.outcome == adl::KettleOutcome::Overfilled ? "overfilled"
                                                                         : "underfilled";
  }
  return block;
}

BlockResult run_door_block(const ParticipantProfile& profile, const ProtocolConfig&,
                           Rng& rng) {
  BlockResult block;
  block.kind = BlockKind::DoorADL;
  block.trials.header = {"t_s", "event", "state", "fill"};

  std::vector<adl::TimedDoorEvent> stream;
  Seconds t = 0.0;
  auto action_time = [&]() {
    const double z = rng.normal01();
    return profile.door_action_s * std::exp(profile.door_action_jitter * z -
                                            0.5 * profile.door_action_jitter *
                                                profile.door_action_jitter);
  };
  for (adl::DoorEvent ev : adl::optimal_door_sequence()) {
    if (rng.bernoulli(profile.door_fumble_p)) {
      t += action_time();
      stream.push_back({t, adl::DoorEvent::RotateBack});  // hesitation, inert
    }
    t += action_time();
    stream.push_back({t, ev});
  }

  const adl::AdlResult res = adl::run_door(stream);
  for (const auto& entry : res.log) {
    block.trials.rows.push_back({fmt(entry.t), entry.input, entry.state, fmt(entry.fill)});
  }
  block.trials_completed = 1;
  block.complete = res.success;
  block.measure = res.completion_time;
  return block;
}

std::vector<BlockKind> counterbalance_order(int participant_index, std::uint64_t seed) {
  Rng base(derive_seed(seed, 0xB10C));
  std::vector<BlockKind> psych = {BlockKind::PosDiscrim, BlockKind::VelDiscrim,
                                  BlockKind::TorqueDiscrim, BlockKind::PosAdjust,
                                  BlockKind::VelAdjust};
  base.shuffle(psych);
  const int adl_bit = base.bernoulli(0.5) ? 1 : 0;
  const int mid_bit = base.bernoulli(0.5) ? 1 : 0;

  const bool kettle_first = ((participant_index + adl_bit) % 2) == 0;
  const bool second_adl_at_4 = (((participant_index / 2) + mid_bit) % 2) == 0;
  const int rot = participant_index % 5;

  std::vector<BlockKind> order(8, BlockKind::GaugeMatch);
  order[0] = BlockKind::GaugeMatch;
  order[1] = kettle_first ? BlockKind::KettleADL : BlockKind::DoorADL;
  const int adl2_slot = second_adl_at_4 ? 4 : 5;
  order[adl2_slot] = kettle_first ? BlockKind::DoorADL : BlockKind::KettleADL;
  int ordinal = 0;
  for (int s = 2; s <= 7; ++s) {
    if (s == adl2_slot) continue;
    order[s] = psych[(ordinal + rot) % 5];
    ++ordinal;
  }
  return order;
}

SessionResult run_session(const ParticipantProfile& profile, const ProtocolConfig& config,
                          std::uint64_t seed, int participant_index) {
  SessionResult session;
  const auto [neutral, crom] =
      measure_crom(profile.pron_limit_deg, profile.sup_limit_deg, profile.neutral_deg);
  session.refs = derive_reference_stimuli(crom);
  session.order = counterbalance_order(participant_index, seed);

  auto block_rng = [&](BlockKind kind) {
    return Rng(derive_seed(seed, 0x5E55 + static_cast<std::uint64_t>(kind)));
  };

  for (BlockKind kind : session.order) {
    Rng rng = block_rng(kind);
    BlockResult block;
    try {
      switch (kind) {
        case BlockKind::GaugeMatch:
          block = run_gauge_block(profile, config, rng);
          break;
        case BlockKind::PosDiscrim:
        case BlockKind::VelDiscrim:
        case BlockKind::TorqueDiscrim:
          block = run_discrimination_block(kind, profile, config, rng);
          break;
        case BlockKind::PosAdjust:
        case BlockKind::VelAdjust:
          block = run_adjustment_block(kind, profile, config, rng);
          break;
        case BlockKind::KettleADL:
          block = run_kettle_block(profile, config, rng);
          break;
        case BlockKind::DoorADL:
          block = run_door_block(profile, config, rng);
          break;
      }
    } catch (const std::exception& e) {
      block.kind = kind;
      block.complete = false;
      block.termination = e.what();
    }
    if (!block.complete) {
      session.issues.push_back(std::string(to_string(kind)) + ": " +
                               (block.termination.empty() ? "incomplete" : block.termination));
    }
    session.blocks.push_back(std::move(block));
  }

  ParticipantRecord& rec = session.record;
  rec.pid = profile.pid;
  rec.age = profile.age;
  rec.gender = profile.gender;
  rec.handedness_li = profile.handedness_li;
  rec.emnsa = profile.emnsa;
  rec.fma_hw = profile.fma_hw;
  rec.moca = profile.moca;
  rec.neutral_deg = neutral;
  rec.crom_deg = crom;

  auto find = [&](BlockKind kind) -> const BlockResult* {
    for (const auto& b : session.blocks) {
      if (b.kind == kind) return &b;
    }
    return nullptr;
  };
  if (const auto* b = find(BlockKind::GaugeMatch); b && b->complete) rec.meg_deg = b->measure;
  if (const auto* b = find(BlockKind::PosDiscrim); b && b->complete) {
    rec.jndp_deg = b->measure;
    rec.kp_pct = b->weber_pct;
  }
  if (const auto* b = find(BlockKind::VelDiscrim); b && b->complete) {
    rec.jndv_dps = b->measure;
    rec.kv_pct = b->weber_pct;
  }
  if (const auto* b = find(BlockKind::TorqueDiscrim); b && b->complete) {
    rec.jndt_mnm = b->measure;
    rec.kt_pct = b->weber_pct;
  }
  if (const auto* b = find(BlockKind::PosAdjust); b && b->complete) rec.mep_deg = b->measure;
  if (const auto* b = find(BlockKind::VelAdjust); b && b->complete) rec.mev_dps = b->measure;
  if (const auto* b = find(BlockKind::KettleADL); b && b->complete) rec.tk_s = b->measure;
  if (const auto* b = find(BlockKind::DoorADL); b && b->complete) rec.td_s = b->measure;
  return session;
}

std::vector<ParticipantProfile> make_default_profiles(int count, std::uint64_t seed) {
  std::vector<ParticipantProfile> profiles;
  profiles.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, 0xF00D + static_cast<std::uint64_t>(i)));
    ParticipantProfile p;
    p.pid = i + 1;
    p.age = static_cast<double>(rng.uniform_int(19, 61));
    p.gender = rng.bernoulli(0.5) ? "F" : "M";
    p.handedness_li = rng.bernoulli(0.5)
                          ? 100.0
                          : std::round(rng.uniform(-45.0, 100.0) * 100.0) / 100.0;
    p.moca = static_cast<int>(rng.uniform_int(25, 30));
    p.pron_limit_deg = rng.uniform(52.0, 60.0);
    p.sup_limit_deg = -rng.uniform(52.0, 60.0);
    p.neutral_deg = rng.uniform(-3.0, 5.0);

    p.pos_model = ObserverModel{.sigma = rng.uniform(1.2, 3.5),
                                .criterion_c = rng.uniform(1.0, 3.0),
                                .lapse_rate = 0.02,
                                .repro_bias = rng.uniform(-3.0, 3.0),
                                .repro_noise_sd = rng.uniform(2.5, 7.0)};
    p.vel_model = ObserverModel{.sigma = rng.uniform(2.0, 8.0),
                                .criterion_c = rng.uniform(2.0, 8.0),
                                .lapse_rate = 0.02,
                                .repro_bias = rng.uniform(-6.0, 6.0),
                                .repro_noise_sd = rng.uniform(7.0, 18.0)};
    p.torque_model = ObserverModel{.sigma = rng.uniform(20.0, 60.0),
                                   .criterion_c = rng.uniform(20.0, 60.0),
                                   .lapse_rate = 0.02,
                                   .hold_noise_sd_deg = rng.uniform(0.5, 2.0)};
    p.gauge_model = ObserverModel{.sigma = 1.0,
                                  .criterion_c = 0.0,
                                  .repro_bias = rng.uniform(-4.0, 4.0),
                                  .gauge_noise_sd = rng.uniform(4.0, 14.0)};

    p.kettle_tilt_excess_deg = rng.uniform(8.0, 30.0);
    p.kettle_fill_wobble = 0.05;
    p.kettle_reaction_s = rng.uniform(0.2, 0.8);
    p.door_action_s = rng.uniform(1.4, 5.0);
    p.door_action_jitter = 0.3;
    p.door_fumble_p = rng.uniform(0.05, 0.45);
    profiles.push_back(std::move(p));
  }
  return profiles;
}

}  // namespace wrist
