#pragma once

#include <cstddef>
#include <vector>

namespace hawkescast {

struct MapeResult {
  double value = 0.0;
  std::size_t n_used = 0;
  std::size_t n_excluded = 0;  // examples with nonpositive truth
};

/// Median absolute percentage error: median over examples of |pred-truth|/truth.
/// Nonpositive truths are excluded and counted.
MapeResult mape(const std::vector<double>& predictions, const std::vector<double>& truths);

/// Kendall tau-b (tie corrected) in O(n log n).
double kendall_tau_b(const std::vector<double>& predictions, const std::vector<double>& truths);

double rmse(const std::vector<double>& predictions, const std::vector<double>& truths);

}  // namespace hawkescast
