#include "wrist/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wrist/report.hpp"
#include "wrist/stats.hpp"

#ifndef WRIST_DATA_DIR
#define WRIST_DATA_DIR "data"
#endif

namespace wrist {

namespace fs = std::filesystem;

std::string default_fixtures_path() {
  return std::string(WRIST_DATA_DIR) + "/fixtures/participants.csv";
}

ProtocolConfig protocol_config_from(const KeyValueConfig& kv) {
  ProtocolConfig cfg;
  cfg.plant.dt_s = kv.get_double("plant.dt_s", cfg.plant.dt_s);
  cfg.plant.inertia_j = kv.get_double("plant.inertia_j", cfg.plant.inertia_j);
  cfg.plant.damping_b = kv.get_double("plant.damping_b", cfg.plant.damping_b);
  cfg.plant.limiter_deg = kv.get_double("plant.limiter_deg", cfg.plant.limiter_deg);
  cfg.plant.encoder_counts_per_rev =
      kv.get_int("plant.encoder_counts_per_rev", cfg.plant.encoder_counts_per_rev);
  cfg.plant.filter_cutoff_hz = kv.get_double("plant.filter_cutoff_hz", cfg.plant.filter_cutoff_hz);

  auto staircase = [&](const std::string& prefix, StaircaseConfig& sc) {
    sc.initial_delta = kv.get_double(prefix + ".initial_delta", sc.initial_delta);
    sc.step_down = kv.get_double(prefix + ".step", sc.step_down);
    sc.step_up = kv.get_double(prefix + ".step_up", kv.get_double(prefix + ".step", sc.step_up));
    sc.delta_floor = kv.get_double(prefix + ".floor", sc.delta_floor);
    sc.delta_ceiling = kv.get_double(prefix + ".ceiling", sc.delta_ceiling);
    sc.max_trials = kv.get_int(prefix + ".max_trials", sc.max_trials);
    sc.stop_reversals = kv.get_int(prefix + ".stop_reversals", sc.stop_reversals);
  };
  staircase("staircase.pos", cfg.pos_staircase);
  staircase("staircase.vel", cfg.vel_staircase);
  staircase("staircase.torque", cfg.torque_staircase);

  cfg.gauge_presentations = kv.get_int("gauge.presentations", cfg.gauge_presentations);
  cfg.adjustment_trials = kv.get_int("adjust.trials", cfg.adjustment_trials);
  cfg.vel_adjust_lo_dps = kv.get_double("adjust.vel_lo_dps", cfg.vel_adjust_lo_dps);
  cfg.vel_adjust_hi_dps = kv.get_double("adjust.vel_hi_dps", cfg.vel_adjust_hi_dps);
  cfg.torque_hold_tolerance_deg =
      kv.get_double("torque.hold_tolerance_deg", cfg.torque_hold_tolerance_deg);
  cfg.wall_stiffness = kv.get_double("walls.stiffness", cfg.wall_stiffness);
  cfg.wall_damping = kv.get_double("walls.damping", cfg.wall_damping);
  cfg.gap_halfwidth_deg = kv.get_double("walls.gap_halfwidth_deg", cfg.gap_halfwidth_deg);
  cfg.gravity_comp_mnm = kv.get_double("gravity_comp_mnm", cfg.gravity_comp_mnm);

  cfg.kettle.tilt_threshold_deg =
      kv.get_double("kettle.tilt_threshold_deg", cfg.kettle.tilt_threshold_deg);
  cfg.kettle.flow_gain = kv.get_double("kettle.flow_gain", cfg.kettle.flow_gain);
  cfg.kettle.target_low = kv.get_double("kettle.target_low", cfg.kettle.target_low);
  cfg.kettle.target_high = kv.get_double("kettle.target_high", cfg.kettle.target_high);
  cfg.kettle.time_limit_s = kv.get_double("kettle.time_limit_s", cfg.kettle.time_limit_s);
  return cfg;
}

namespace {

KeyValueConfig load_config(const CliOptions& opt) {
  if (opt.config_path.empty()) return KeyValueConfig{};
  return KeyValueConfig::read_file(opt.config_path);
}

std::string participants_input(const CliOptions& opt) {
  return opt.in_path.empty() ? default_fixtures_path() : opt.in_path;
}

}  // namespace

int cmd_simulate(const CliOptions& opt, std::ostream& out) {
  const KeyValueConfig kv = load_config(opt);
  const ProtocolConfig cfg = protocol_config_from(kv);
  const int n = kv.get_int("participants", opt.participants);
  const std::uint64_t seed = kv.get_u64("seed", opt.seed);

  const std::string out_dir = opt.out_dir.empty() ? "wrist_out" : opt.out_dir;
  fs::create_directories(out_dir);

  auto profiles = make_default_profiles(n, seed);
  std::vector<ParticipantRecord> records;
  int issues = 0;
  for (int i = 0; i < n; ++i) {
    const SessionResult session =
        run_session(profiles[i], cfg, derive_seed(seed, 0x5E5510 + i), i);
    records.push_back(session.record);

    std::ostringstream dir;
    dir << out_dir << "/p" << std::setw(2) << std::setfill('0') << profiles[i].pid;
    fs::create_directories(dir.str());
    for (const auto& block : session.blocks) {
      csv::write_file(block.trials, dir.str() + "/" + to_string(block.kind) + ".csv");
    }
    for (const auto& issue : session.issues) {
      out << "p" << profiles[i].pid << " issue: " << issue << "\n";
      ++issues;
    }
  }
  save_participants(records, out_dir + "/participants.csv");

  KeyValueConfig echo = kv;
  echo.set("participants", std::to_string(n));
  echo.set("seed", std::to_string(seed));
  std::ofstream cfg_out(out_dir + "/config.txt");
  cfg_out << echo.to_text();

  out << "simulated " << n << " sessions -> " << out_dir << "/participants.csv";
  if (issues) out << " (" << issues << " block issues)";
  out << "\n";
  return 0;
}

int cmd_analyze(const CliOptions& opt, std::ostream& out) {
  const auto recs = load_participants(participants_input(opt));
  if (recs.empty()) throw csv::ParseError("input table has no rows");
  const auto rep = report::analyze_report(recs);
  out << rep.text;
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    csv::write_file(rep.descriptives_csv, opt.out_dir + "/descriptives.csv");
    csv::write_file(rep.correlation_csv, opt.out_dir + "/correlations.csv");
    csv::write_file(rep.tests_csv, opt.out_dir + "/difference_tests.csv");
    out << "reports written to " << opt.out_dir << "\n";
  }
  return 0;
}

int cmd_reproduce_paper(const CliOptions& opt, std::ostream& out) {
  const auto recs = load_participants(participants_input(opt));
  if (recs.empty()) throw csv::ParseError("fixture table has no rows");
  const auto rep = report::reproduce_report(recs);
  out << rep.text;
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    csv::write_file(rep.checks_csv, opt.out_dir + "/reproduction_checks.csv");
    csv::write_file(rep.correlation_csv, opt.out_dir + "/correlation_matrix.csv");
    out << "reports written to " << opt.out_dir << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_montecarlo(const CliOptions& opt, std::ostream& out) {
  const KeyValueConfig kv = load_config(opt);
  const ProtocolConfig cfg = protocol_config_from(kv);
  const int runs = kv.get_int("runs", opt.runs);
  const std::uint64_t seed = kv.get_u64("seed", opt.seed);

  ParticipantProfile profile;
  profile.pron_limit_deg = 59.25;
  profile.sup_limit_deg = -59.25;
  profile.neutral_deg = 0.0;
  profile.pos_model = {.sigma = kv.get_double("mc.sigma_pos", 2.2),
                       .criterion_c = kv.get_double("mc.criterion_pos", 2.0),
                       .lapse_rate = kv.get_double("mc.lapse", 0.02)};
  profile.vel_model = {.sigma = kv.get_double("mc.sigma_vel", 6.0),
                       .criterion_c = kv.get_double("mc.criterion_vel", 6.0),
                       .lapse_rate = kv.get_double("mc.lapse", 0.02)};
  profile.torque_model = {.sigma = kv.get_double("mc.sigma_torque", 40.0),
                          .criterion_c = kv.get_double("mc.criterion_torque", 40.0),
                          .lapse_rate = kv.get_double("mc.lapse", 0.02)};

  struct Case {
    BlockKind kind;
    const ObserverModel* model;
    const char* name;
    double ceiling;
  };
  const ReferenceSet refs = derive_reference_stimuli(profile.pron_limit_deg -
                                                     profile.sup_limit_deg);
  const Case cases[] = {
      {BlockKind::PosDiscrim, &profile.pos_model, "position", cfg.pos_staircase.delta_ceiling},
      {BlockKind::VelDiscrim, &profile.vel_model, "velocity", cfg.vel_staircase.delta_ceiling},
      {BlockKind::TorqueDiscrim, &profile.torque_model, "torque",
       cfg.torque_staircase.delta_ceiling},
  };

  int status = 0;
  out << "staircase validation, " << runs << " runs per modality\n";
  for (const Case& c : cases) {
    std::vector<double> jnds;
    int incomplete = 0;
    for (int r = 0; r < runs; ++r) {
      Rng rng(derive_seed(seed, 0x3C0 + static_cast<std::uint64_t>(c.kind) * 100003 + r));
      const BlockResult block = run_discrimination_block(c.kind, profile, cfg, rng);
      if (block.complete) {
        jnds.push_back(block.measure);
      } else {
        ++incomplete;
      }
    }
    if (jnds.empty()) {
      out << "  " << c.name << ": no completed runs\n";
      status = 1;
      continue;
    }
    const auto d = stats::descriptives(jnds);
    const double target = solve_convergence_delta(*c.model, 1e-6, c.ceiling);
    const double rel = std::abs(d.median - target) / target;
    out << "  " << c.name << ": median JND " << d.median << " (mean " << d.mean << ", sd "
        << d.std_sample << "), analytic 79.4% point " << target << ", deviation "
        << std::fixed << std::setprecision(1) << 100.0 * rel << std::defaultfloat << "%";
    if (incomplete) out << ", " << incomplete << " incomplete";
    out << (rel <= 0.15 ? " [ok]" : " [outside 15%]") << "\n";
    if (rel > 0.15) status = 1;
  }
  return status;
}

int cmd_validate(const CliOptions& opt, std::ostream& out) {
  const auto recs = load_participants(participants_input(opt));
  if (recs.empty()) throw csv::ParseError("input table has no rows");
  int bad = 0;
  for (const auto& rec : recs) {
    const auto violations = validate_participant(rec);
    for (const auto& v : violations) {
      out << "p" << rec.pid << ": " << v << "\n";
      ++bad;
    }
  }
  out << recs.size() << " records, " << bad << " violations\n";
  return bad == 0 ? 0 : 1;
}

int run_cli(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.mode == "simulate") return cmd_simulate(opt, out);
    if (opt.mode == "analyze") return cmd_analyze(opt, out);
    if (opt.mode == "reproduce-paper") return cmd_reproduce_paper(opt, out);
    if (opt.mode == "montecarlo") return cmd_montecarlo(opt, out);
    if (opt.mode == "validate") return cmd_validate(opt, out);
    err << "unknown mode '" << opt.mode
        << "' (expected simulate|analyze|reproduce-paper|montecarlo|validate)\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wrist
