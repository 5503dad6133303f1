#include "hawkescast/estimators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "hawkescast/moments.hpp"

namespace hawkescast {

VelocityTracker::VelocityTracker(double window_length, std::size_t n_buckets)
    : window_(window_length),
      bucket_width_(window_length / static_cast<double>(n_buckets)),
      buckets_(n_buckets, 0.0),
      bucket_ids_(n_buckets, -1) {
  if (!(window_length > 0.0)) throw std::invalid_argument("VelocityTracker: window must be > 0");
  if (n_buckets < 1) throw std::invalid_argument("VelocityTracker: need at least one bucket");
}

void VelocityTracker::observe(double t, double /*mark*/) {
  if (t < 0.0) throw std::invalid_argument("VelocityTracker: t must be >= 0");
  if (any_ && t < last_time_)
    throw std::invalid_argument("VelocityTracker: out-of-order event rejected");
  const auto id = static_cast<std::int64_t>(std::floor(t / bucket_width_));
  const std::size_t slot = static_cast<std::size_t>(id % static_cast<std::int64_t>(buckets_.size()));
  if (bucket_ids_[slot] != id) {
    bucket_ids_[slot] = id;
    buckets_[slot] = 0.0;
  }
  buckets_[slot] += 1.0;
  ++total_count_;
  sum_times_ += t;
  last_time_ = t;
  any_ = true;
  if (std::has_single_bit(total_count_)) {
    const int j = std::bit_width(total_count_) - 1;
    checkpoints_[static_cast<std::size_t>(j)] = t;
    max_checkpoint_ = j;
  }
}

double VelocityTracker::window_count(double s) const {
  const auto hi = static_cast<std::int64_t>(std::floor(s / bucket_width_));
  const auto lo = static_cast<std::int64_t>(std::floor(std::max(0.0, s - window_) / bucket_width_));
  double count = 0.0;
  for (std::size_t slot = 0; slot < buckets_.size(); ++slot) {
    const auto id = bucket_ids_[slot];
    if (id >= lo && id <= hi) count += buckets_[slot];
  }
  return count;
}

double VelocityTracker::velocity(double s) const { return window_count(s) / window_; }

double VelocityTracker::checkpoint_time_at_least(std::uint64_t k) const {
  if (max_checkpoint_ < 0 || k == 0) return 0.0;
  for (int j = 0; j <= max_checkpoint_; ++j) {
    if ((std::uint64_t{1} << j) >= k) return checkpoints_[static_cast<std::size_t>(j)];
  }
  return last_time_;
}

double alpha_mean(const std::vector<double>& times, double start_offset) {
  std::size_t n = 0;
  double sum = 0.0;
  for (double t : times) {
    if (t < start_offset) continue;
    ++n;
    sum += t - start_offset;
  }
  if (n == 0) throw std::domain_error("alpha_mean: no events after offset");
  if (sum <= 0.0) throw std::domain_error("alpha_mean: all event times at the offset");
  return static_cast<double>(n) / sum;
}

double alpha_mean(const Cascade& cascade, double start_offset) {
  std::vector<double> times;
  times.reserve(cascade.events.size());
  for (const auto& e : cascade.events) times.push_back(e.time);
  return alpha_mean(times, start_offset);
}

double alpha_quantile(const Cascade& cascade, double gamma, bool raw_reciprocal,
                      double start_offset) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("alpha_quantile: gamma must be in (0, 1)");
  std::vector<double> times;
  for (const auto& e : cascade.events) {
    if (e.time >= start_offset) times.push_back(e.time - start_offset);
  }
  const std::size_t n = times.size();
  if (n == 0) throw std::domain_error("alpha_quantile: no events after offset");
  // N(t) >= gamma*n first holds right after the ceil(gamma*n)-th point.
  auto k = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n)));
  if (k < 1) k = 1;
  const double t_gamma = times[k - 1];
  if (t_gamma <= 0.0) throw std::domain_error("alpha_quantile: T_gamma is zero");
  return (raw_reciprocal ? 1.0 : quantile_scale(gamma)) / t_gamma;
}

std::pair<double, double> remaining_integral_identity(const Cascade& cascade) {
  const std::size_t n = cascade.events.size();
  double integral = 0.0;  // int (n - N(t)) dt, piecewise constant between events
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    integral += (cascade.events[i].time - prev) * static_cast<double>(n - i);
    prev = cascade.events[i].time;
  }
  double sum = 0.0;
  for (const auto& e : cascade.events) sum += e.time;
  return {integral, sum};
}

}  // namespace hawkescast
