#pragma once

#include <cstdint>
#include <vector>

#include "hawkescast/estimators.hpp"
#include "hawkescast/types.hpp"

namespace hawkescast {

struct FeatureConfig {
  double base_window = 3600.0;  // d, seconds
  std::vector<double> gamma_list = {0.5, 0.9};
  std::size_t n_buckets = 64;

  std::size_t temporal_dim() const { return 10 + gamma_list.size(); }
};

/// Constant-size streaming summary of one item's event history. All features
/// are O(1) to update and to read, independent of event count.
class ItemState {
 public:
  explicit ItemState(const FeatureConfig& config = {});

  void observe(double t, double mark = 0.0);

  /// Temporal feature slice at prediction time s (s >= last event time):
  /// [N(s), velocity over {d, 4d, 16d}, counts in {1h, 6h, 24h} windows,
  ///  s, log(1+N(s)), mean event time, T_gamma estimates for gamma_list].
  std::vector<double> temporal_features(double s) const;

  std::uint64_t count() const { return windows_[0].total_count(); }
  const FeatureConfig& config() const { return config_; }

 private:
  FeatureConfig config_;
  std::vector<VelocityTracker> windows_;  // d, 4d, 16d, 1h, 6h, 24h
};

/// Full feature vector: cascade.static_attrs followed by the temporal slice
/// computed from events strictly before s.
std::vector<double> extract_features(const Cascade& cascade, double s,
                                     const FeatureConfig& config = {});

/// Same, but fed from an already-built ItemState (the O(1) path).
std::vector<double> extract_features(const std::vector<double>& static_attrs,
                                     const ItemState& state, double s);

}  // namespace hawkescast
