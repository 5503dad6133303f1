#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "hawkescast/types.hpp"

namespace hawkescast {

/// Constant-state sliding-window event counter. Memory is O(B) buckets plus
/// a fixed set of per-index checkpoint times, independent of stream length.
class VelocityTracker {
 public:
  explicit VelocityTracker(double window_length, std::size_t n_buckets = 64);

  /// Feed one event; times must be nondecreasing (stream contract).
  void observe(double t, double mark = 0.0);

  /// Rate of points over [s - d, s]; bucket-granularity error at the left edge.
  double velocity(double s) const;

  /// Events counted in [s - d, s] (same granularity caveat).
  double window_count(double s) const;

  std::uint64_t total_count() const { return total_count_; }
  double sum_of_times() const { return sum_times_; }
  double last_time() const { return last_time_; }
  double window_length() const { return window_; }

  /// Time of the 2^j-th event for stored j; used as a constant-memory
  /// approximation of quantile crossing times. Returns the time of the
  /// smallest stored power-of-two index >= k, or last_time() if beyond.
  double checkpoint_time_at_least(std::uint64_t k) const;

 private:
  double window_;
  double bucket_width_;
  std::vector<double> buckets_;       // counts per time bucket (ring)
  std::vector<std::int64_t> bucket_ids_;  // absolute bucket index stored in each slot
  std::uint64_t total_count_ = 0;
  double sum_times_ = 0.0;
  double last_time_ = 0.0;
  bool any_ = false;
  std::array<double, 64> checkpoints_{};  // time of event 2^j
  int max_checkpoint_ = -1;
};

/// Mean-value estimator: alpha_hat = n / sum(T_i - start_offset) over events
/// after start_offset (times re-based to the offset).
double alpha_mean(const Cascade& cascade, double start_offset = 0.0);
double alpha_mean(const std::vector<double>& times, double start_offset = 0.0);

/// Quantile-value estimator: alpha_hat = c_gamma / T_gamma with
/// c_gamma = log(1/(1-gamma)); `raw_reciprocal` restores the plain 1/T_gamma
/// variant. T_gamma is the time of the ceil(gamma*n)-th event after the
/// offset. gamma = 1/2 is the median-value estimator.
double alpha_quantile(const Cascade& cascade, double gamma, bool raw_reciprocal = false,
                      double start_offset = 0.0);

/// Both sides of int_0^inf (n - N(t)) dt = sum T_i, computed independently
/// (piecewise-constant integral vs direct sum).
std::pair<double, double> remaining_integral_identity(const Cascade& cascade);

}  // namespace hawkescast
