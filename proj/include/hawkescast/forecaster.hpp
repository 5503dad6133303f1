#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hawkescast/features.hpp"
#include "hawkescast/gbrt.hpp"
#include "hawkescast/types.hpp"

namespace hawkescast {

enum class Aggregation { single, arithmetic, geometric };
enum class AlphaEstimatorKind { mean, quantile };

struct ForecastConfig {
  std::vector<double> ref_horizons = {86400.0};  // seconds, strictly increasing
  Aggregation aggregation = Aggregation::single;
  AlphaEstimatorKind alpha_estimator = AlphaEstimatorKind::mean;
  double alpha_quantile_gamma = 0.5;
  double alpha_min = 1e-7;
  double alpha_max = 1e2;
  /// Count labels are log(increment + log_offset); the offset is subtracted
  /// back after exponentiation so zero increments stay representable.
  double log_offset = 1.0;
  GbrtConfig learner;
  FeatureConfig features;
  int schema_version = 1;

  void validate() const;
};

struct TrainingSample {
  std::vector<double> features;
  std::vector<double> count_labels;  // log(increment + offset), one per ref horizon
  double alpha_label = 0.0;
};

struct TrainingSet {
  std::vector<TrainingSample> samples;
  std::size_t dropped_truncated = 0;  // examples without coverage up to s + max ref horizon
};

struct SamplingPolicy {
  /// Prediction times per item, log-spaced in [s_min, s_max].
  double s_min = 3600.0;
  double s_max = 4.0 * 86400.0;
  std::size_t samples_per_item = 4;

  std::vector<double> prediction_times() const;
};

/// Builds (features, count labels per reference horizon, alpha label)
/// examples. Coverage: an example at s requires observation through
/// s + max ref horizon; t_cover is the per-cascade observation end.
TrainingSet build_training_set(const std::vector<Cascade>& dataset, const SamplingPolicy& policy,
                               const ForecastConfig& config, double t_cover);

/// Trained forecaster: m count regressors plus the growth-exponent regressor.
class ForecastModel {
 public:
  ForecastModel() = default;

  static ForecastModel fit(const TrainingSet& training, const ForecastConfig& config);

  /// Predicted effective growth exponent, clamped to [alpha_min, alpha_max].
  double predict_alpha(std::span<const double> features) const;

  /// Raw point-regressor output Y(delta*_i; s) for reference horizon i.
  double point_prediction(std::span<const double> features, std::size_t horizon_index) const;

  /// Predicted N(s + delta). Uses the configured aggregation; delta may be
  /// kInfiniteHorizon (the implied asymptote).
  double predict(std::span<const double> features, double n_s, double delta) const;

  /// Single-reference-horizon extrapolation (requires m == 1).
  double predict_single(std::span<const double> features, double n_s, double delta) const;
  double predict_arithmetic(std::span<const double> features, double n_s, double delta) const;
  double predict_geometric(std::span<const double> features, double n_s, double delta) const;

  const ForecastConfig& config() const { return config_; }
  bool degenerate() const;  // any regressor collapsed to a constant

  nlohmann::json to_json() const;
  static ForecastModel from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static ForecastModel load(const std::string& path);

 private:
  std::vector<double> implied_asymptotes(std::span<const double> features, double alpha) const;

  ForecastConfig config_;
  std::vector<TreeEnsembleRegressor> count_models_;
  TreeEnsembleRegressor alpha_model_;
};

enum class GrowthDecision { exceeds, not_exceeds };

/// Threshold rule for "will the count eventually exceed c * N(s)":
/// fires iff lambda_s >= (c - 1 + chi(N_s)) * alpha * N_s, where chi accounts
/// for process stochasticity at confidence 1 - eps_conf. With
/// use_expected_value_rule the plain rule lambda_s >= (c-1) alpha N_s is used.
GrowthDecision relative_growth_decision(double lambda_s, double n_s, double alpha, double Sigma2,
                                        double c, double eps_conf,
                                        bool use_expected_value_rule = false);

/// The chi(x) slack term of the confidence rule.
double relative_growth_chi(double x, double Sigma2, double c, double eps_conf);

}  // namespace hawkescast
