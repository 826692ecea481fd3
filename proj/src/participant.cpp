#include "wrist/participant.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wrist {

ReferenceSet derive_reference_stimuli(Degrees crom_deg) {
  if (!(crom_deg > 0.0)) {
    throw std::domain_error("derive_reference_stimuli: cROM must be positive");
  }
  return ReferenceSet{
      .pos_ref_deg = kPosRefCromFraction * crom_deg,
      .vel_ref_dps = kVelRefDps,
      .torque_ref_mnm = kTorqueRefMnm,
  };
}

namespace {

void check_range(std::vector<std::string>& out, const std::string& field, double v,
                 double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream ss;
    ss << field << " = " << v << " outside [" << lo << ", " << hi << "]";
    out.push_back(ss.str());
  }
}

void check_positive(std::vector<std::string>& out, const std::string& field, double v) {
  if (!(v > 0.0)) {
    std::ostringstream ss;
    ss << field << " = " << v << " must be > 0";
    out.push_back(ss.str());
  }
}

void check_weber(std::vector<std::string>& out, const std::string& field, double stated_pct,
                 double jnd, double reference) {
  const double expected = 100.0 * jnd / reference;
  if (std::abs(stated_pct - expected) > kWeberConsistencyTol) {
    std::ostringstream ss;
    ss << field << " = " << stated_pct << " inconsistent with 100*JND/reference = "
       << expected << " (tolerance " << kWeberConsistencyTol << ")";
    out.push_back(ss.str());
  }
}

}  // namespace

std::vector<std::string> validate_participant(const ParticipantRecord& r) {
  std::vector<std::string> v;
  check_range(v, "handedness_li", r.handedness_li, -100.0, 100.0);
  check_range(v, "emnsa", r.emnsa, 0, 8);
  check_range(v, "fma_hw", r.fma_hw, 0, 30);
  check_range(v, "moca", r.moca, 0, 30);
  check_positive(v, "crom_deg", r.crom_deg);
  check_positive(v, "meg_deg", r.meg_deg);
  check_positive(v, "jndp_deg", r.jndp_deg);
  check_positive(v, "jndv_dps", r.jndv_dps);
  check_positive(v, "jndt_mnm", r.jndt_mnm);
  check_positive(v, "mep_deg", r.mep_deg);
  check_positive(v, "mev_dps", r.mev_dps);
  check_positive(v, "tk_s", r.tk_s);
  check_positive(v, "td_s", r.td_s);
  if (r.crom_deg > 0.0) {
    check_weber(v, "kp_pct", r.kp_pct, r.jndp_deg, kPosRefCromFraction * r.crom_deg);
  }
  check_weber(v, "kv_pct", r.kv_pct, r.jndv_dps, kVelRefDps);
  check_weber(v, "kt_pct", r.kt_pct, r.jndt_mnm, kTorqueRefMnm);
  return v;
}

const std::vector<std::string>& participant_columns() {
  static const std::vector<std::string> cols = {
      "pid",      "age",      "gender",   "handedness_li", "emnsa",
      "fma_hw",   "moca",     "neutral_deg", "crom_deg",   "meg_deg",
      "jndp_deg", "kp_pct",   "jndv_dps", "kv_pct",        "jndt_mnm",
      "kt_pct",   "mep_deg",  "mev_dps",  "tk_s",          "td_s"};
  return cols;
}

csv::Table to_table(const std::vector<ParticipantRecord>& recs) {
  csv::Table t;
  t.header = participant_columns();
  for (const auto& r : recs) {
    t.rows.push_back({std::to_string(r.pid), csv::format_double(r.age), r.gender,
                      csv::format_double(r.handedness_li), std::to_string(r.emnsa),
                      std::to_string(r.fma_hw), std::to_string(r.moca),
                      csv::format_double(r.neutral_deg), csv::format_double(r.crom_deg),
                      csv::format_double(r.meg_deg), csv::format_double(r.jndp_deg),
                      csv::format_double(r.kp_pct), csv::format_double(r.jndv_dps),
                      csv::format_double(r.kv_pct), csv::format_double(r.jndt_mnm),
                      csv::format_double(r.kt_pct), csv::format_double(r.mep_deg),
                      csv::format_double(r.mev_dps), csv::format_double(r.tk_s),
                      csv::format_double(r.td_s)});
  }
  return t;
}

std::vector<ParticipantRecord> from_table(const csv::Table& t) {
  for (const auto& col : participant_columns()) {
    t.column_index(col);  // schema check, throws naming the column
  }
  std::vector<ParticipantRecord> recs;
  recs.reserve(t.rows.size());
  auto col = [&](const std::string& name) { return t.column_index(name); };
  const std::size_t c_pid = col("pid"), c_age = col("age"), c_gender = col("gender"),
                    c_hand = col("handedness_li"), c_emnsa = col("emnsa"),
                    c_fma = col("fma_hw"), c_moca = col("moca"),
                    c_neutral = col("neutral_deg"), c_crom = col("crom_deg"),
                    c_meg = col("meg_deg"), c_jndp = col("jndp_deg"), c_kp = col("kp_pct"),
                    c_jndv = col("jndv_dps"), c_kv = col("kv_pct"), c_jndt = col("jndt_mnm"),
                    c_kt = col("kt_pct"), c_mep = col("mep_deg"), c_mev = col("mev_dps"),
                    c_tk = col("tk_s"), c_td = col("td_s");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    const std::string ctx = "row " + std::to_string(i + 2);
    ParticipantRecord r;
    r.pid = static_cast<int>(csv::parse_double(row[c_pid], ctx + " pid"));
    r.age = csv::parse_double(row[c_age], ctx + " age");
    r.gender = row[c_gender];
    r.handedness_li = csv::parse_double(row[c_hand], ctx + " handedness_li");
    r.emnsa = static_cast<int>(csv::parse_double(row[c_emnsa], ctx + " emnsa"));
    r.fma_hw = static_cast<int>(csv::parse_double(row[c_fma], ctx + " fma_hw"));
    r.moca = static_cast<int>(csv::parse_double(row[c_moca], ctx + " moca"));
    r.neutral_deg = csv::parse_double(row[c_neutral], ctx + " neutral_deg");
    r.crom_deg = csv::parse_double(row[c_crom], ctx + " crom_deg");
    r.meg_deg = csv::parse_double(row[c_meg], ctx + " meg_deg");
    r.jndp_deg = csv::parse_double(row[c_jndp], ctx + " jndp_deg");
    r.kp_pct = csv::parse_double(row[c_kp], ctx + " kp_pct");
    r.jndv_dps = csv::parse_double(row[c_jndv], ctx + " jndv_dps");
    r.kv_pct = csv::parse_double(row[c_kv], ctx + " kv_pct");
    r.jndt_mnm = csv::parse_double(row[c_jndt], ctx + " jndt_mnm");
    r.kt_pct = csv::parse_double(row[c_kt], ctx + " kt_pct");
    r.mep_deg = csv::parse_double(row[c_mep], ctx + " mep_deg");
    r.mev_dps = csv::parse_double(row[c_mev], ctx + " mev_dps");
    r.tk_s = csv::parse_double(row[c_tk], ctx + " tk_s");
    r.td_s = csv::parse_double(row[c_td], ctx + " td_s");
    recs.push_back(std::move(r));
  }
  return recs;
}

std::vector<ParticipantRecord> load_participants(const std::string& path) {
  return from_table(csv::read_file(path));
}

void save_participants(const std::vector<ParticipantRecord>& recs, const std::string& path) {
  csv::write_file(to_table(recs), path);
}

}  // namespace wrist
