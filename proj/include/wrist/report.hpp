#pragma once

#include <string>
#include <vector>

#include "wrist/csv.hpp"
#include "wrist/participant.hpp"
#include "wrist/stats.hpp"

namespace wrist::report {

/// One verified quantity: computed value against its expected value. Rows
/// with a NaN tolerance are informational and never fail.
struct CheckRow {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
};

/// The ten analysis measures (clinical scores that saturate are excluded).
struct MeasureTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;
};

MeasureTable analysis_measures(const std::vector<ParticipantRecord>& recs);

struct ReproduceReport {
  std::vector<CheckRow> checks;
  std::string text;
  csv::Table correlation_csv;  // computed Spearman and Pearson for every pair
  csv::Table checks_csv;
  bool all_pass() const;
};

/// Recomputes the full statistical pipeline on the participant table and
/// compares against the published values bundled with the toolkit.
ReproduceReport reproduce_report(const std::vector<ParticipantRecord>& recs);

struct AnalyzeReport {
  std::string text;
  csv::Table descriptives_csv;
  csv::Table correlation_csv;
  csv::Table tests_csv;
};

/// Generic statistics report for any schema-conforming participant table.
AnalyzeReport analyze_report(const std::vector<ParticipantRecord>& recs);

}  // namespace wrist::report
