#include "hawkescast/features.hpp"

#include <cmath>

namespace hawkescast {

ItemState::ItemState(const FeatureConfig& config) : config_(config) {
  const double d = config_.base_window;
  for (double w : {d, 4.0 * d, 16.0 * d, 3600.0, 6.0 * 3600.0, 24.0 * 3600.0}) {
    windows_.emplace_back(w, config_.n_buckets);
  }
}

void ItemState::observe(double t, double mark) {
  for (auto& w : windows_) w.observe(t, mark);
}

std::vector<double> ItemState::temporal_features(double s) const {
  std::vector<double> out;
  out.reserve(config_.temporal_dim());
  const auto n = static_cast<double>(count());
  out.push_back(n);
  out.push_back(windows_[0].velocity(s));
  out.push_back(windows_[1].velocity(s));
  out.push_back(windows_[2].velocity(s));
  out.push_back(windows_[3].window_count(s));
  out.push_back(windows_[4].window_count(s));
  out.push_back(windows_[5].window_count(s));
  out.push_back(s);
  out.push_back(std::log1p(n));
  out.push_back(count() > 0 ? windows_[0].sum_of_times() / n : 0.0);
  for (double gamma : config_.gamma_list) {
    const auto k = static_cast<std::uint64_t>(std::ceil(gamma * n));
    out.push_back(windows_[0].checkpoint_time_at_least(k));
  }
  return out;
}

std::vector<double> extract_features(const std::vector<double>& static_attrs,
                                     const ItemState& state, double s) {
  std::vector<double> out = static_attrs;
  auto temporal = state.temporal_features(s);
  out.insert(out.end(), temporal.begin(), temporal.end());
  return out;
}

std::vector<double> extract_features(const Cascade& cascade, double s,
                                     const FeatureConfig& config) {
  ItemState state(config);
  for (const auto& e : cascade.events) {
    if (e.time >= s) break;
    state.observe(e.time, e.mark);
  }
  return extract_features(cascade.static_attrs, state, s);
}

}  // namespace hawkescast
