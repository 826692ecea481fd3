#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wrist::stats {

/// Statistic + p-value + how it was obtained, for any hypothesis test.
struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  int n = 0;
  std::vector<std::string> notes;
};

/// Ranks 1..n with tied values sharing the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& x);

/// Spearman rank correlation (tie-correct: Pearson on average ranks).
/// Two-sided p via the t transform with n-2 degrees of freedom.
TestResult spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Sample linear correlation with the same t-based p.
TestResult pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Paired signed-rank test. Zero differences are dropped, tied magnitudes get
/// average ranks. Exact two-sided p by enumerating the sign-assignment
/// distribution for n <= exact_limit, normal approximation with tie
/// correction beyond.
TestResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y,
                                int exact_limit = 20);

/// Friedman rank test over an n-rows x k-columns matrix (rows = subjects).
/// Tie-corrected when within-row ties exist; p from chi-square with k-1 df.
TestResult friedman(const std::vector<std::vector<double>>& matrix);

struct PairwiseComparison {
  std::size_t col_a = 0;
  std::size_t col_b = 0;
  double rank_sum_a = 0.0;
  double rank_sum_b = 0.0;
  double p_unadjusted = 1.0;
  TestResult test;  // statistic = z, p_value = Bonferroni-adjusted
};

/// Dunn-style z tests on Friedman rank-sum differences, Bonferroni-adjusted
/// over all column pairs (capped at 1).
std::vector<PairwiseComparison> posthoc_pairwise(const std::vector<std::vector<double>>& matrix);

/// Lilliefors normality screen: max |empirical CDF - fitted normal CDF|, with
/// a Monte Carlo p-value from seeded resampling under the fitted null.
TestResult normality_screen(const std::vector<double>& x, int resamples = 10000,
                            std::uint64_t seed = 0x4c494c4cULL);

struct Descriptives {
  double mean = 0.0;
  double std_sample = 0.0;  // n-1 denominator; 0 with a note when n == 1
  double median = 0.0;
  std::vector<std::string> notes;
};

Descriptives descriptives(const std::vector<double>& x);

enum class CorrelationMethod { Spearman, Pearson };

struct CorrelationMatrix {
  std::vector<std::string> labels;
  // Upper triangle, indexed [i][j - i - 1] for i < j. NaN where undefined.
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> p;
  std::vector<std::string> notes;  // per-pair undefined flags and exclusions
};

/// All unique unordered pairs of the given columns. Constant columns yield
/// NaN cells flagged in notes; the matrix is still returned.
CorrelationMatrix correlation_matrix(const std::vector<std::vector<double>>& columns,
                                     const std::vector<std::string>& labels,
                                     CorrelationMethod method = CorrelationMethod::Spearman);

double normal_cdf(double z);

}  // namespace wrist::stats
