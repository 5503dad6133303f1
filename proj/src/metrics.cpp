#include "hawkescast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hawkescast {

namespace {

void check_sizes(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("metrics: size mismatch");
}

// Counts strict inversions in `values` by merge sort.
std::uint64_t count_inversions(std::vector<double>& values, std::size_t lo, std::size_t hi,
                               std::vector<double>& scratch) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = count_inversions(values, lo, mid, scratch) +
                        count_inversions(values, mid, hi, scratch);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      count += mid - i;
      scratch[k++] = values[j++];
    } else {
      scratch[k++] = values[i++];
    }
  }
  while (i < mid) scratch[k++] = values[i++];
  while (j < hi) scratch[k++] = values[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

std::uint64_t tie_pairs(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::uint64_t total = 0;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const std::uint64_t g = j - i;
    total += g * (g - 1) / 2;
    i = j;
  }
  return total;
}

}  // namespace

MapeResult mape(const std::vector<double>& predictions, const std::vector<double>& truths) {
  check_sizes(predictions, truths);
  MapeResult out;
  std::vector<double> errors;
  errors.reserve(truths.size());
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] <= 0.0) {
      ++out.n_excluded;
      continue;
    }
    errors.push_back(std::abs(predictions[i] - truths[i]) / truths[i]);
  }
  out.n_used = errors.size();
  if (errors.empty()) throw std::domain_error("mape: no examples with positive truth");
  const std::size_t n = errors.size();
  std::nth_element(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(n / 2), errors.end());
  double median = errors[n / 2];
  if (n % 2 == 0) {
    const double lower = *std::max_element(errors.begin(),
                                           errors.begin() + static_cast<std::ptrdiff_t>(n / 2));
    median = 0.5 * (median + lower);
  }
  out.value = median;
  return out;
}

double kendall_tau_b(const std::vector<double>& predictions, const std::vector<double>& truths) {
  check_sizes(predictions, truths);
  const std::size_t n = predictions.size();
  if (n < 2) throw std::domain_error("kendall_tau_b: need at least two examples");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (predictions[a] != predictions[b]) return predictions[a] < predictions[b];
    return truths[a] < truths[b];
  });

  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t n1 = tie_pairs(predictions);
  const std::uint64_t n2 = tie_pairs(truths);

  // Pairs tied in both variables.
  std::uint64_t n3 = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && predictions[order[j]] == predictions[order[i]] &&
             truths[order[j]] == truths[order[i]])
        ++j;
      const std::uint64_t g = j - i;
      n3 += g * (g - 1) / 2;
      i = j;
    }
  }

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = truths[order[i]];
  std::vector<double> scratch(n);
  const std::uint64_t discordant = count_inversions(y, 0, n, scratch);

  const double s = static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
                   static_cast<double>(n3) - 2.0 * static_cast<double>(discordant);
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                       std::sqrt(static_cast<double>(n0 - n2));
  if (denom == 0.0) throw std::domain_error("kendall_tau_b: a variable is constant");
  return s / denom;
}

double rmse(const std::vector<double>& predictions, const std::vector<double>& truths) {
  check_sizes(predictions, truths);
  if (predictions.empty()) throw std::domain_error("rmse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - truths[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(predictions.size()));
}

}  // namespace hawkescast
