#include "wrist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "wrist/rng.hpp"

namespace wrist::stats {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

double t_pvalue_two_sided(double t, int df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double chi2_pvalue_upper(double x, int df) {
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

void require_finite(const std::vector<double>& x, const char* who) {
  for (double v : x) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(who) + ": non-finite value");
  }
}

double sample_correlation(const std::vector<double>& x, const std::vector<double>& y,
                          const char* who) {
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw std::domain_error(std::string(who) + ": zero-variance input, correlation undefined");
  }
  return sxy / std::sqrt(sxx * syy);
}

TestResult correlation_result(double r, int n, const std::string& method) {
  TestResult res;
  res.statistic = r;
  res.method = method;
  res.n = n;
  const double one_minus = 1.0 - r * r;
  if (one_minus <= 0.0) {
    res.p_value = 0.0;
    res.notes.push_back("|r| = 1: p underflows to 0");
  } else {
    const double t = r * std::sqrt((n - 2) / one_minus);
    res.p_value = t_pvalue_two_sided(t, n - 2);
  }
  return res;
}

bool has_duplicates(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& x) {
  if (x.empty()) throw std::domain_error("average_ranks: empty input");
  require_finite(x, "average_ranks");
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

TestResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::domain_error("spearman: length mismatch");
  if (x.size() < 4) throw std::domain_error("spearman: need n >= 4");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  TestResult res = correlation_result(sample_correlation(rx, ry, "spearman"),
                                      static_cast<int>(x.size()), "spearman-rho-tapprox");
  if (has_duplicates(x) || has_duplicates(y)) res.notes.push_back("ties present, average ranks");
  return res;
}

TestResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::domain_error("pearson: length mismatch");
  if (x.size() < 4) throw std::domain_error("pearson: need n >= 4");
  require_finite(x, "pearson");
  require_finite(y, "pearson");
  return correlation_result(sample_correlation(x, y, "pearson"),
                            static_cast<int>(x.size()), "pearson-r-tapprox");
}

TestResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y,
                                int exact_limit) {
  if (x.size() != y.size()) throw std::domain_error("wilcoxon_signed_rank: length mismatch");
  std::vector<double> diff;
  int zeros = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    if (!std::isfinite(d)) throw std::domain_error("wilcoxon_signed_rank: non-finite difference");
    if (d == 0.0) {
      ++zeros;
    } else {
      diff.push_back(d);
    }
  }
  const int n = static_cast<int>(diff.size());
  if (n == 0) throw std::domain_error("wilcoxon_signed_rank: all differences zero");

  std::vector<double> abs_diff(diff.size());
  std::transform(diff.begin(), diff.end(), abs_diff.begin(),
                 [](double d) { return std::abs(d); });
  const auto ranks = average_ranks(abs_diff);

  double w_pos = 0.0, w_neg = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    (diff[i] > 0.0 ? w_pos : w_neg) += ranks[i];
  }
  const double w_min = std::min(w_pos, w_neg);

  TestResult res;
  res.statistic = w_min;
  res.n = n;
  if (zeros > 0) res.notes.push_back(std::to_string(zeros) + " zero differences dropped");
  const bool ties = has_duplicates(abs_diff);
  if (ties) res.notes.push_back("tied magnitudes, average ranks");

  if (n <= exact_limit) {
    // Exact null distribution of 2*W+ over all 2^n sign assignments, built as
    // the polynomial product of (1 + z^(2*rank)). Average ranks are
    // half-integers, so doubling makes every exponent integral.
    std::vector<std::int64_t> r2(diff.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      r2[i] = std::llround(2.0 * ranks[i]);
    }
    const std::int64_t total2 = std::accumulate(r2.begin(), r2.end(), std::int64_t{0});
    std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
    count[0] = 1.0;
    std::int64_t reach = 0;
    for (std::int64_t r : r2) {
      for (std::int64_t s = reach; s >= 0; --s) {
        if (count[static_cast<std::size_t>(s)] > 0.0) {
          count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
        }
      }
      reach += r;
    }
    const std::int64_t w2 = std::llround(2.0 * w_min);
    double tail_low = 0.0, tail_high = 0.0;
    for (std::int64_t s = 0; s <= total2; ++s) {
      if (s <= w2) tail_low += count[static_cast<std::size_t>(s)];
      if (s >= total2 - w2) tail_high += count[static_cast<std::size_t>(s)];
    }
    const double denom = std::ldexp(1.0, n);  // 2^n
    res.p_value = std::min(1.0, (tail_low + tail_high) / denom);
    res.method = "wilcoxon-signed-rank-exact";
  } else {
    const double mean = n * (n + 1) / 4.0;
    double tie_term = 0.0;
    std::vector<double> sorted = abs_diff;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    const double var = n * (n + 1) * (2.0 * n + 1) / 24.0 - tie_term / 48.0;
    const double z = (w_min - mean + 0.5) / std::sqrt(var);  // continuity-corrected
    res.p_value = std::min(1.0, 2.0 * normal_cdf(z));
    res.method = "wilcoxon-signed-rank-normal";
  }
  return res;
}

namespace {

struct FriedmanRanks {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> rank_sums;
  double tie_correction = 1.0;  // Conover's C; 0 when every row is constant
};

FriedmanRanks friedman_ranks(const std::vector<std::vector<double>>& matrix) {
  if (matrix.size() < 2) throw std::domain_error("friedman: need n >= 2 rows");
  const std::size_t k = matrix.front().size();
  if (k < 2) throw std::domain_error("friedman: need k >= 2 columns");
  FriedmanRanks fr;
  fr.n = matrix.size();
  fr.k = k;
  fr.rank_sums.assign(k, 0.0);
  double tie_sum = 0.0;
  for (const auto& row : matrix) {
    if (row.size() != k) throw std::domain_error("friedman: ragged matrix");
    const auto ranks = average_ranks(row);
    for (std::size_t j = 0; j < k; ++j) fr.rank_sums[j] += ranks[j];
    std::vector<double> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < k) {
      std::size_t j = i;
      while (j + 1 < k && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_sum += t * t * t - t;
      i = j + 1;
    }
  }
  fr.tie_correction =
      1.0 - tie_sum / (static_cast<double>(fr.n) * k * (static_cast<double>(k) * k - 1.0));
  return fr;
}

}  // namespace

TestResult friedman(const std::vector<std::vector<double>>& matrix) {
  const FriedmanRanks fr = friedman_ranks(matrix);
  const double n = static_cast<double>(fr.n);
  const double k = static_cast<double>(fr.k);
  double sum_sq = 0.0;
  for (double r : fr.rank_sums) sum_sq += r * r;
  double chi2 = 12.0 / (n * k * (k + 1.0)) * sum_sq - 3.0 * n * (k + 1.0);

  TestResult res;
  res.n = static_cast<int>(fr.n);
  res.method = "friedman-chi2";
  if (fr.tie_correction <= 0.0) {
    res.statistic = 0.0;
    res.p_value = 1.0;
    res.notes.push_back("all rows fully tied, statistic degenerate");
    return res;
  }
  if (fr.tie_correction < 1.0) {
    chi2 /= fr.tie_correction;
    res.notes.push_back("within-row ties, corrected statistic");
  }
  res.statistic = chi2;
  res.p_value = chi2_pvalue_upper(chi2, static_cast<int>(fr.k) - 1);
  return res;
}

std::vector<PairwiseComparison> posthoc_pairwise(
    const std::vector<std::vector<double>>& matrix) {
  const FriedmanRanks fr = friedman_ranks(matrix);
  const double n = static_cast<double>(fr.n);
  const double k = static_cast<double>(fr.k);
  const double se = std::sqrt(n * k * (k + 1.0) / 6.0);
  const std::size_t npairs = fr.k * (fr.k - 1) / 2;

  std::vector<PairwiseComparison> out;
  for (std::size_t i = 0; i < fr.k; ++i) {
    for (std::size_t j = i + 1; j < fr.k; ++j) {
      PairwiseComparison c;
      c.col_a = i;
      c.col_b = j;
      c.rank_sum_a = fr.rank_sums[i];
      c.rank_sum_b = fr.rank_sums[j];
      const double z = std::abs(fr.rank_sums[i] - fr.rank_sums[j]) / se;
      c.p_unadjusted = 2.0 * (1.0 - normal_cdf(z));
      c.test.statistic = z;
      c.test.p_value = std::min(1.0, c.p_unadjusted * static_cast<double>(npairs));
      c.test.method = "dunn-z-bonferroni";
      c.test.n = static_cast<int>(fr.n);
      out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

double lilliefors_statistic(std::vector<double> x) {
  const std::size_t n = x.size();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (sd <= 0.0) throw std::domain_error("normality_screen: zero variance");
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = normal_cdf((x[i] - mean) / sd);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace

TestResult normality_screen(const std::vector<double>& x, int resamples, std::uint64_t seed) {
  if (x.size() < 5) throw std::domain_error("normality_screen: need n >= 5");
  require_finite(x, "normality_screen");
  const double d_obs = lilliefors_statistic(x);

  Rng rng(seed);
  std::vector<double> sample(x.size());
  int at_least = 0;
  for (int r = 0; r < resamples; ++r) {
    for (auto& v : sample) v = rng.normal01();
    if (lilliefors_statistic(sample) >= d_obs) ++at_least;
  }
  TestResult res;
  res.statistic = d_obs;
  res.p_value = static_cast<double>(at_least + 1) / (resamples + 1);
  res.method = "lilliefors-montecarlo";
  res.n = static_cast<int>(x.size());
  res.notes.push_back(std::to_string(resamples) + " resamples");
  return res;
}

Descriptives descriptives(const std::vector<double>& x) {
  if (x.empty()) throw std::domain_error("descriptives: empty input");
  require_finite(x, "descriptives");
  Descriptives d;
  const std::size_t n = x.size();
  d.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  if (n == 1) {
    d.std_sample = 0.0;
    d.notes.push_back("n = 1: sample std undefined, reported as 0");
  } else {
    double ss = 0.0;
    for (double v : x) ss += (v - d.mean) * (v - d.mean);
    d.std_sample = std::sqrt(ss / (n - 1));
  }
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  d.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return d;
}

CorrelationMatrix correlation_matrix(const std::vector<std::vector<double>>& columns,
                                     const std::vector<std::string>& labels,
                                     CorrelationMethod method) {
  if (columns.size() != labels.size()) {
    throw std::domain_error("correlation_matrix: labels/columns mismatch");
  }
  if (columns.size() < 2) throw std::domain_error("correlation_matrix: need >= 2 measures");
  const std::size_t m = columns.size();
  for (std::size_t i = 1; i < m; ++i) {
    if (columns[i].size() != columns[0].size()) {
      throw std::domain_error("correlation_matrix: unequal column lengths");
    }
  }
  CorrelationMatrix cm;
  cm.labels = labels;
  cm.rho.resize(m);
  cm.p.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    cm.rho[i].assign(m - i - 1, std::numeric_limits<double>::quiet_NaN());
    cm.p[i].assign(m - i - 1, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = i + 1; j < m; ++j) {
      try {
        const TestResult r = (method == CorrelationMethod::Spearman)
                                 ? spearman(columns[i], columns[j])
                                 : pearson(columns[i], columns[j]);
        cm.rho[i][j - i - 1] = r.statistic;
        cm.p[i][j - i - 1] = r.p_value;
      } catch (const std::domain_error& e) {
        cm.notes.push_back("(" + labels[i] + ", " + labels[j] + ") undefined: " + e.what());
      }
    }
  }
  return cm;
}

}  // namespace wrist::stats
