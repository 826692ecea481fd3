#include "wrist/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace wrist::report {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Published values for the bundled 11-participant dataset.
// ---------------------------------------------------------------------------

struct Footer {
  const char* column;
  double mean, std, median;
};

constexpr Footer kPublishedFooters[] = {
    {"meg_deg", 8.93, 3.04, 8.66},   {"jndp_deg", 3.77, 2.21, 4.12},
    {"kp_pct", 10.96, 6.68, 11.57},  {"jndv_dps", 8.32, 3.38, 7.45},
    {"kv_pct", 13.87, 5.63, 12.42},  {"jndt_mnm", 99.94, 37.98, 91.10},
    {"kt_pct", 19.99, 7.60, 18.22},  {"mep_deg", 5.29, 1.54, 5.14},
    {"mev_dps", 15.82, 4.30, 16.44}, {"tk_s", 8.53, 3.32, 6.60},
    {"td_s", 41.89, 23.59, 34.57},
};

// Upper triangle over (Handedness, MoCA, MEg, JNDp, JNDv, JNDt, MEp, MEv, Tk, Td).
constexpr double kPublishedRho[9][9] = {
    {0.31, 0.18, -0.43, 0.15, -0.41, 0.45, -0.24, -0.40, -0.57},
    {kNaN, -0.33, -0.47, -0.17, -0.28, 0.14, -0.19, -0.29, -0.78},
    {kNaN, kNaN, -0.02, 0.38, -0.33, -0.02, -0.17, 0.37, 0.06},
    {kNaN, kNaN, kNaN, 0.06, 0.07, 0.25, 0.14, 0.30, 0.59},
    {kNaN, kNaN, kNaN, kNaN, 0.14, 0.72, 0.40, 0.10, -0.03},
    {kNaN, kNaN, kNaN, kNaN, kNaN, -0.12, 0.09, 0.05, 0.29},
    {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0.30, -0.41, -0.35},
    {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0.58, 0.34},
    {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0.39},
};

constexpr double kPublishedP[9][9] = {
    {0.346, 0.589, 0.185, 0.652, 0.211, 0.169, 0.472, 0.221, 0.064},
    {kNaN, 0.318, 0.142, 0.626, 0.398, 0.673, 0.566, 0.382, 0.004},
    {kNaN, kNaN, 0.959, 0.247, 0.322, 0.959, 0.617, 0.261, 0.860},
    {kNaN, kNaN, kNaN, 0.862, 0.833, 0.457, 0.680, 0.371, 0.061},
    {kNaN, kNaN, kNaN, kNaN, 0.686, 0.013, 0.225, 0.776, 0.946},
    {kNaN, kNaN, kNaN, kNaN, kNaN, 0.735, 0.788, 0.884, 0.384},
    {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0.364, 0.214, 0.299},
    {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0.066, 0.313},
    {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0.237},
};

// Pairwise difference tests as published: three position-sense comparisons
// (post-hoc after the rank test) and the velocity-sense signed-rank test.
constexpr double kPublishedPairwiseP[3] = {0.019, 0.057, 0.859};  // MEg-JNDp, MEg-MEp, JNDp-MEp
constexpr double kPublishedWilcoxonP = 0.000976;

std::string fmt(double v, int prec = 4) {
  if (std::isnan(v)) return "";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(prec) << v;
  return ss.str();
}

CheckRow make_check(const std::string& name, double computed, double expected,
                    double tolerance, const std::string& note = "") {
  CheckRow row{name, computed, expected, tolerance, false, note};
  row.pass = std::isfinite(computed) && std::abs(computed - expected) <= tolerance;
  return row;
}

CheckRow make_info(const std::string& name, double computed, double expected,
                   const std::string& note) {
  return CheckRow{name, computed, expected, kNaN, true, note};
}

std::vector<double> column(const std::vector<ParticipantRecord>& recs,
                           double ParticipantRecord::* field) {
  std::vector<double> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(r.*field);
  return out;
}

std::vector<double> int_column(const std::vector<ParticipantRecord>& recs,
                               int ParticipantRecord::* field) {
  std::vector<double> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(static_cast<double>(r.*field));
  return out;
}

bool is_constant(const std::vector<double>& v) {
  for (double x : v) {
    if (x != v.front()) return false;
  }
  return true;
}

}  // namespace

MeasureTable analysis_measures(const std::vector<ParticipantRecord>& recs) {
  MeasureTable t;
  t.labels = {"Handedness", "MoCA", "MEg", "JNDp", "JNDv",
              "JNDt",       "MEp",  "MEv", "Tk",   "Td"};
  t.columns = {column(recs, &ParticipantRecord::handedness_li),
               int_column(recs, &ParticipantRecord::moca),
               column(recs, &ParticipantRecord::meg_deg),
               column(recs, &ParticipantRecord::jndp_deg),
               column(recs, &ParticipantRecord::jndv_dps),
               column(recs, &ParticipantRecord::jndt_mnm),
               column(recs, &ParticipantRecord::mep_deg),
               column(recs, &ParticipantRecord::mev_dps),
               column(recs, &ParticipantRecord::tk_s),
               column(recs, &ParticipantRecord::td_s)};
  return t;
}

bool ReproduceReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

ReproduceReport reproduce_report(const std::vector<ParticipantRecord>& recs) {
  ReproduceReport rep;
  std::ostringstream text;
  text << "Reproduction report: " << recs.size() << " participants\n";

  // --- Weber-fraction consistency -----------------------------------------
  for (const auto& r : recs) {
    const std::string pid = "p" + std::to_string(r.pid);
    rep.checks.push_back(make_check("weber.kp." + pid,
                                    100.0 * r.jndp_deg / (kPosRefCromFraction * r.crom_deg),
                                    r.kp_pct, kWeberConsistencyTol));
    rep.checks.push_back(make_check("weber.kv." + pid, 100.0 * r.jndv_dps / kVelRefDps,
                                    r.kv_pct, kWeberConsistencyTol));
    rep.checks.push_back(make_check("weber.kt." + pid, 100.0 * r.jndt_mnm / kTorqueRefMnm,
                                    r.kt_pct, kWeberConsistencyTol));
  }

  // --- Descriptive footers --------------------------------------------------
  const csv::Table table = to_table(recs);
  for (const Footer& f : kPublishedFooters) {
    const auto vals = table.numeric_column(f.column);
    const auto d = stats::descriptives(vals);
    rep.checks.push_back(make_check(std::string("footer.mean.") + f.column, d.mean, f.mean, 0.01));
    rep.checks.push_back(
        make_check(std::string("footer.std.") + f.column, d.std_sample, f.std, 0.01));
    rep.checks.push_back(
        make_check(std::string("footer.median.") + f.column, d.median, f.median, 0.01));
  }

  // --- Correlation matrix ----------------------------------------------------
  const MeasureTable mt = analysis_measures(recs);
  rep.correlation_csv.header = {"measure_a",  "measure_b",  "spearman_rho", "spearman_p",
                                "pearson_r",  "pearson_p",  "published_rho", "published_p",
                                "nearest_method"};
  int spearman_nearest = 0, pearson_nearest = 0;
  for (std::size_t i = 0; i < mt.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < mt.labels.size(); ++j) {
      const auto sp = stats::spearman(mt.columns[i], mt.columns[j]);
      const auto pe = stats::pearson(mt.columns[i], mt.columns[j]);
      const double pub_rho = kPublishedRho[i][j - 1];
      const double pub_p = kPublishedP[i][j - 1];
      std::string nearest = "spearman";
      if (std::abs(pe.statistic - pub_rho) < std::abs(sp.statistic - pub_rho)) {
        nearest = "pearson";
        ++pearson_nearest;
      } else {
        ++spearman_nearest;
      }
      rep.correlation_csv.rows.push_back(
          {mt.labels[i], mt.labels[j], csv::format_double(sp.statistic),
           csv::format_double(sp.p_value), csv::format_double(pe.statistic),
           csv::format_double(pe.p_value), csv::format_double(pub_rho),
           csv::format_double(pub_p), nearest});
    }
  }

  const auto sp_moca_td = stats::spearman(mt.columns[1], mt.columns[9]);
  rep.checks.push_back(make_check("spearman.rho.moca_td", sp_moca_td.statistic, -0.78, 0.005));
  rep.checks.push_back(make_check("spearman.p.moca_td", sp_moca_td.p_value, 0.004, 0.001));
  const auto sp_hand_td = stats::spearman(mt.columns[0], mt.columns[9]);
  rep.checks.push_back(
      make_check("spearman.rho.handedness_td", sp_hand_td.statistic, -0.57, 0.01));
  rep.checks.push_back(make_check("spearman.p.handedness_td", sp_hand_td.p_value, 0.064, 0.005));

  // The published cell for (JNDv, MEp) matches Pearson on the raw columns,
  // not tie-corrected Spearman; both routes are reported.
  const auto pe_jndv_mep = stats::pearson(mt.columns[4], mt.columns[6]);
  rep.checks.push_back(make_check("pearson.r.jndv_mep", pe_jndv_mep.statistic, 0.717, 0.005,
                                  "published as 0.72"));
  rep.checks.push_back(make_check("pearson.p.jndv_mep", pe_jndv_mep.p_value, 0.013, 0.002));
  const auto sp_jndv_mep = stats::spearman(mt.columns[4], mt.columns[6]);
  rep.checks.push_back(make_check("spearman.rho.jndv_mep", sp_jndv_mep.statistic, 0.638, 0.005,
                                  "rank-based value for the same pair"));

  // --- Difference tests -------------------------------------------------------
  const auto wil = stats::wilcoxon_signed_rank(mt.columns[4], mt.columns[7]);  // JNDv vs MEv
  rep.checks.push_back(make_check("wilcoxon.p.jndv_mev", wil.p_value, 2.0 / 2048.0, 1e-12,
                                  "published rounds to 0.000976"));

  std::vector<std::vector<double>> pos_matrix(recs.size(), std::vector<double>(3));
  for (std::size_t r = 0; r < recs.size(); ++r) {
    pos_matrix[r] = {recs[r].meg_deg, recs[r].jndp_deg, recs[r].mep_deg};
  }
  const auto fried = stats::friedman(pos_matrix);
  rep.checks.push_back(make_check("friedman.chi2.position", fried.statistic, 12.18, 0.02));
  rep.checks.push_back(make_check("friedman.p.position", fried.p_value, 0.0023, 0.0005));

  const auto posthoc = stats::posthoc_pairwise(pos_matrix);
  const char* pair_names[] = {"meg_jndp", "meg_mep", "jndp_mep"};
  for (std::size_t k = 0; k < posthoc.size(); ++k) {
    rep.checks.push_back(make_info(
        std::string("posthoc.p.") + pair_names[k], posthoc[k].p_unadjusted,
        kPublishedPairwiseP[k],
        "published value not attributable to a standard post-hoc; informational"));
  }

  // --- Render -----------------------------------------------------------------
  rep.checks_csv.header = {"check", "computed", "expected", "tolerance", "status", "note"};
  int npass = 0, nfail = 0, ninfo = 0;
  for (const auto& c : rep.checks) {
    const bool info = std::isnan(c.tolerance);
    if (info) {
      ++ninfo;
    } else if (c.pass) {
      ++npass;
    } else {
      ++nfail;
    }
    rep.checks_csv.rows.push_back({c.name, csv::format_double(c.computed),
                                   csv::format_double(c.expected),
                                   info ? "" : csv::format_double(c.tolerance),
                                   info ? "INFO" : (c.pass ? "PASS" : "FAIL"), c.note});
  }

  text << "checks: " << npass << " pass, " << nfail << " fail, " << ninfo
       << " informational\n\n";
  text << std::left << std::setw(28) << "check" << std::right << std::setw(12) << "computed"
       << std::setw(12) << "expected" << std::setw(10) << "tol"
       << "  status\n";
  for (const auto& c : rep.checks) {
    const bool info = std::isnan(c.tolerance);
    const bool interesting = info || !c.pass || c.name.rfind("weber.", 0) != 0;
    if (!interesting) continue;  // weber passes are summarized, not listed
    text << std::left << std::setw(28) << c.name << std::right << std::setw(12)
         << fmt(c.computed, 5) << std::setw(12) << fmt(c.expected, 5) << std::setw(10)
         << (info ? std::string("-") : fmt(c.tolerance, 4)) << "  "
         << (info ? "INFO" : (c.pass ? "PASS" : "FAIL"));
    if (!c.note.empty()) text << "  (" << c.note << ")";
    text << "\n";
  }
  text << "\ncorrelation attribution: " << spearman_nearest
       << " cells nearest Spearman, " << pearson_nearest
       << " nearest Pearson (published table mixes methods)\n";
  rep.text = text.str();
  return rep;
}

AnalyzeReport analyze_report(const std::vector<ParticipantRecord>& recs) {
  AnalyzeReport rep;
  std::ostringstream text;
  text << "Analysis report: " << recs.size() << " participants\n\n";

  const csv::Table table = to_table(recs);
  rep.descriptives_csv.header = {"column", "mean", "std", "median", "normality_p"};
  text << std::left << std::setw(16) << "column" << std::right << std::setw(10) << "mean"
       << std::setw(10) << "std" << std::setw(10) << "median" << std::setw(14)
       << "normality p\n";
  for (const auto& colname :
       {"handedness_li", "moca", "neutral_deg", "crom_deg", "meg_deg", "jndp_deg", "kp_pct",
        "jndv_dps", "kv_pct", "jndt_mnm", "kt_pct", "mep_deg", "mev_dps", "tk_s", "td_s"}) {
    const auto vals = table.numeric_column(colname);
    const auto d = stats::descriptives(vals);
    double norm_p = kNaN;
    try {
      norm_p = stats::normality_screen(vals).p_value;
    } catch (const std::domain_error&) {
      // constant column: screen undefined
    }
    rep.descriptives_csv.rows.push_back({colname, csv::format_double(d.mean),
                                         csv::format_double(d.std_sample),
                                         csv::format_double(d.median),
                                         std::isnan(norm_p) ? "" : csv::format_double(norm_p)});
    text << std::left << std::setw(16) << colname << std::right << std::setw(10)
         << fmt(d.mean, 3) << std::setw(10) << fmt(d.std_sample, 3) << std::setw(10)
         << fmt(d.median, 3) << std::setw(12) << (std::isnan(norm_p) ? "-" : fmt(norm_p, 3))
         << "\n";
  }

  const MeasureTable mt = analysis_measures(recs);
  const auto cm = stats::correlation_matrix(mt.columns, mt.labels);
  rep.correlation_csv.header = {"measure_a", "measure_b", "rho", "p"};
  text << "\nSpearman correlations (rho, p):\n";
  for (std::size_t i = 0; i < mt.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < mt.labels.size(); ++j) {
      const double rho = cm.rho[i][j - i - 1];
      const double p = cm.p[i][j - i - 1];
      rep.correlation_csv.rows.push_back(
          {mt.labels[i], mt.labels[j], csv::format_double(rho), csv::format_double(p)});
      if (!std::isnan(p) && p < 0.05) {
        text << "  " << mt.labels[i] << " vs " << mt.labels[j] << ": rho=" << fmt(rho, 3)
             << " p=" << fmt(p, 4) << "\n";
      }
    }
  }
  for (const auto& note : cm.notes) text << "  note: " << note << "\n";

  rep.tests_csv.header = {"test", "statistic", "p", "method", "note"};
  const auto wil = stats::wilcoxon_signed_rank(mt.columns[4], mt.columns[7]);
  rep.tests_csv.rows.push_back({"wilcoxon_jndv_mev", csv::format_double(wil.statistic),
                                csv::format_double(wil.p_value), wil.method, ""});
  std::vector<std::vector<double>> pos_matrix(recs.size(), std::vector<double>(3));
  for (std::size_t r = 0; r < recs.size(); ++r) {
    pos_matrix[r] = {recs[r].meg_deg, recs[r].jndp_deg, recs[r].mep_deg};
  }
  const auto fried = stats::friedman(pos_matrix);
  rep.tests_csv.rows.push_back({"friedman_position", csv::format_double(fried.statistic),
                                csv::format_double(fried.p_value), fried.method, ""});
  const auto posthoc = stats::posthoc_pairwise(pos_matrix);
  const char* pair_names[] = {"meg_jndp", "meg_mep", "jndp_mep"};
  for (std::size_t k = 0; k < posthoc.size(); ++k) {
    rep.tests_csv.rows.push_back({std::string("posthoc_") + pair_names[k],
                                  csv::format_double(posthoc[k].test.statistic),
                                  csv::format_double(posthoc[k].test.p_value),
                                  posthoc[k].test.method,
                                  "unadjusted=" + csv::format_double(posthoc[k].p_unadjusted)});
  }

  text << "\nDifference tests:\n";
  text << "  velocity passive vs active (signed-rank): W=" << fmt(wil.statistic, 1)
       << " p=" << fmt(wil.p_value, 6) << "\n";
  text << "  position measures (rank test): chi2=" << fmt(fried.statistic, 3)
       << " p=" << fmt(fried.p_value, 5) << "\n";
  for (std::size_t k = 0; k < posthoc.size(); ++k) {
    text << "    " << pair_names[k] << ": z=" << fmt(posthoc[k].test.statistic, 3)
         << " p_adj=" << fmt(posthoc[k].test.p_value, 4) << "\n";
  }
  rep.text = text.str();
  return rep;
}

}  // namespace wrist::report
