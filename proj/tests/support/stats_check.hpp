#pragma once

#include <cmath>
#include <map>
#include <vector>

namespace mcplan::testing {

// Pearson chi-square statistic for observed counts against expected
// probabilities (same index order).
inline double chi_square(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected_probs,
                         std::uint64_t total) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double expect = expected_probs[i] * static_cast<double>(total);
    if (expect <= 0.0) continue;
    double diff = static_cast<double>(observed[i]) - expect;
    stat += diff * diff / expect;
  }
  return stat;
}

// Upper critical values of the chi-square distribution at alpha = 0.001;
// a statistic below the value is consistent with the null at p > 0.001.
inline double chi_square_crit_001(int df) {
  static const std::map<int, double> crit = {
      {1, 10.828}, {2, 13.816}, {3, 16.266},  {4, 18.467},  {5, 20.515},
      {6, 22.458}, {7, 24.322}, {8, 26.124},  {9, 27.877},  {10, 29.588},
      {11, 31.264}, {12, 32.909}, {15, 37.697}, {20, 45.315}, {31, 61.098}};
  return crit.at(df);
}

// Two-pass mean and sample variance, the oracle for the incremental
// statistics.
inline std::pair<double, double> two_pass_mean_var(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(xs.size() - 1)};
}

inline bool close_rel(double a, double b, double tol) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace mcplan::testing
