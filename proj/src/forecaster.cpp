#include "hawkescast/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hawkescast/estimators.hpp"
#include "hawkescast/numeric.hpp"

namespace hawkescast {

void ForecastConfig::validate() const {
  if (ref_horizons.empty()) throw std::invalid_argument("ForecastConfig: need at least one reference horizon");
  for (std::size_t i = 0; i < ref_horizons.size(); ++i) {
    if (!(ref_horizons[i] > 0.0))
      throw std::invalid_argument("ForecastConfig: reference horizons must be positive");
    if (i > 0 && !(ref_horizons[i] > ref_horizons[i - 1]))
      throw std::invalid_argument("ForecastConfig: reference horizons must be strictly increasing");
  }
  if (!(alpha_min > 0.0 && alpha_max > alpha_min))
    throw std::invalid_argument("ForecastConfig: need 0 < alpha_min < alpha_max");
  if (aggregation == Aggregation::single && ref_horizons.size() != 1)
    throw std::invalid_argument("ForecastConfig: single aggregation requires exactly one horizon");
}

std::vector<double> SamplingPolicy::prediction_times() const {
  std::vector<double> out;
  if (samples_per_item == 0) return out;
  if (samples_per_item == 1) {
    out.push_back(s_min);
    return out;
  }
  const double ratio = std::log(s_max / s_min) / static_cast<double>(samples_per_item - 1);
  for (std::size_t i = 0; i < samples_per_item; ++i) {
    out.push_back(s_min * std::exp(ratio * static_cast<double>(i)));
  }
  return out;
}

TrainingSet build_training_set(const std::vector<Cascade>& dataset, const SamplingPolicy& policy,
                               const ForecastConfig& config, double t_cover) {
  config.validate();
  TrainingSet out;
  const double max_ref = config.ref_horizons.back();
  const auto times = policy.prediction_times();
  for (const auto& cascade : dataset) {
    double alpha_label;
    try {
      alpha_label = config.alpha_estimator == AlphaEstimatorKind::mean
                        ? alpha_mean(cascade)
                        : alpha_quantile(cascade, config.alpha_quantile_gamma);
    } catch (const std::domain_error&) {
      continue;  // empty or degenerate cascade carries no growth signal
    }
    alpha_label = std::clamp(alpha_label, config.alpha_min, config.alpha_max);

    for (double s : times) {
      if (s + max_ref > t_cover) {
        ++out.dropped_truncated;
        continue;
      }
      TrainingSample sample;
      sample.features = extract_features(cascade, s, config.features);
      const auto n_s = static_cast<double>(cascade.count_before(s));
      for (double ref : config.ref_horizons) {
        const auto n_end = static_cast<double>(cascade.count_before(s + ref));
        sample.count_labels.push_back(std::log(n_end - n_s + config.log_offset));
      }
      sample.alpha_label = std::log(alpha_label);
      out.samples.push_back(std::move(sample));
    }
  }
  return out;
}

ForecastModel ForecastModel::fit(const TrainingSet& training, const ForecastConfig& config) {
  config.validate();
  if (training.samples.empty())
    throw std::invalid_argument("ForecastModel::fit: empty training set");
  ForecastModel model;
  model.config_ = config;

  std::vector<std::vector<double>> rows;
  rows.reserve(training.samples.size());
  for (const auto& s : training.samples) rows.push_back(s.features);

  for (std::size_t h = 0; h < config.ref_horizons.size(); ++h) {
    std::vector<double> y;
    y.reserve(training.samples.size());
    for (const auto& s : training.samples) y.push_back(s.count_labels.at(h));
    TreeEnsembleRegressor reg(config.learner);
    reg.fit(rows, y);
    model.count_models_.push_back(std::move(reg));
  }
  {
    std::vector<double> y;
    y.reserve(training.samples.size());
    for (const auto& s : training.samples) y.push_back(s.alpha_label);
    TreeEnsembleRegressor reg(config.learner);
    reg.fit(rows, y);
    model.alpha_model_ = std::move(reg);
  }
  return model;
}

bool ForecastModel::degenerate() const {
  if (alpha_model_.is_constant()) return true;
  for (const auto& m : count_models_) {
    if (m.is_constant()) return true;
  }
  return false;
}

double ForecastModel::predict_alpha(std::span<const double> features) const {
  const double a = std::exp(alpha_model_.predict(features));
  return std::clamp(a, config_.alpha_min, config_.alpha_max);
}

double ForecastModel::point_prediction(std::span<const double> features,
                                       std::size_t horizon_index) const {
  return count_models_.at(horizon_index).predict(features);
}

std::vector<double> ForecastModel::implied_asymptotes(std::span<const double> features,
                                                      double alpha) const {
  std::vector<double> out;
  out.reserve(count_models_.size());
  for (std::size_t i = 0; i < count_models_.size(); ++i) {
    const double inc = std::exp(count_models_[i].predict(features)) - config_.log_offset;
    out.push_back(std::max(inc, 0.0) / one_minus_exp_neg(alpha * config_.ref_horizons[i]));
  }
  return out;
}

double ForecastModel::predict_single(std::span<const double> features, double n_s,
                                     double delta) const {
  if (count_models_.size() != 1)
    throw std::logic_error("predict_single requires a single reference horizon");
  if (!(delta > 0.0)) throw std::invalid_argument("predict_single: delta must be > 0");
  const double y_star = count_models_[0].predict(features);
  const double inc_star = std::exp(y_star) - config_.log_offset;
  const double ref = config_.ref_horizons[0];
  if (delta == ref) return n_s + inc_star;  // exact passthrough, no ratio arithmetic
  const double alpha = predict_alpha(features);
  if (!(alpha > 0.0)) throw std::domain_error("predict_single: nonpositive alpha");
  const double denom = one_minus_exp_neg(alpha * ref);
  const double num = is_infinite_horizon(delta) ? 1.0 : one_minus_exp_neg(alpha * delta);
  return n_s + inc_star * (num / denom);
}

double ForecastModel::predict_arithmetic(std::span<const double> features, double n_s,
                                         double delta) const {
  if (!(delta > 0.0)) throw std::invalid_argument("predict_arithmetic: delta must be > 0");
  if (count_models_.size() == 1) return predict_single(features, n_s, delta);
  const double alpha = predict_alpha(features);
  const auto asym = implied_asymptotes(features, alpha);
  double mean = 0.0;
  for (double a : asym) mean += a;
  mean /= static_cast<double>(asym.size());
  const double scale = is_infinite_horizon(delta) ? 1.0 : one_minus_exp_neg(alpha * delta);
  return n_s + mean * scale;
}

double ForecastModel::predict_geometric(std::span<const double> features, double n_s,
                                        double delta) const {
  if (!(delta > 0.0)) throw std::invalid_argument("predict_geometric: delta must be > 0");
  if (count_models_.size() == 1) return predict_single(features, n_s, delta);
  const double alpha = predict_alpha(features);
  const auto asym = implied_asymptotes(features, alpha);
  double log_sum = 0.0;
  for (double a : asym) log_sum += std::log(std::max(a, 1e-12));
  const double geo = std::exp(log_sum / static_cast<double>(asym.size()));
  const double scale = is_infinite_horizon(delta) ? 1.0 : one_minus_exp_neg(alpha * delta);
  return n_s + geo * scale;
}

double ForecastModel::predict(std::span<const double> features, double n_s, double delta) const {
  switch (config_.aggregation) {
    case Aggregation::single:
      return predict_single(features, n_s, delta);
    case Aggregation::arithmetic:
      return predict_arithmetic(features, n_s, delta);
    case Aggregation::geometric:
      return predict_geometric(features, n_s, delta);
  }
  throw std::logic_error("ForecastModel::predict: unknown aggregation");
}

nlohmann::json ForecastModel::to_json() const {
  nlohmann::json j;
  j["format"] = "hawkescast.forecast_model";
  j["schema_version"] = config_.schema_version;
  j["ref_horizons"] = config_.ref_horizons;
  j["aggregation"] = static_cast<int>(config_.aggregation);
  j["alpha_estimator"] = static_cast<int>(config_.alpha_estimator);
  j["alpha_quantile_gamma"] = config_.alpha_quantile_gamma;
  j["alpha_min"] = config_.alpha_min;
  j["alpha_max"] = config_.alpha_max;
  j["log_offset"] = config_.log_offset;
  j["feature_base_window"] = config_.features.base_window;
  j["feature_gamma_list"] = config_.features.gamma_list;
  j["count_models"] = nlohmann::json::array();
  for (const auto& m : count_models_) j["count_models"].push_back(m.to_json());
  j["alpha_model"] = alpha_model_.to_json();
  return j;
}

ForecastModel ForecastModel::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "hawkescast.forecast_model")
    throw std::invalid_argument("ForecastModel: not a forecast model file");
  ForecastModel model;
  model.config_.schema_version = j.at("schema_version").get<int>();
  if (model.config_.schema_version != 1)
    throw std::invalid_argument("ForecastModel: unsupported schema version " +
                                std::to_string(model.config_.schema_version) + " (expected 1)");
  model.config_.ref_horizons = j.at("ref_horizons").get<std::vector<double>>();
  model.config_.aggregation = static_cast<Aggregation>(j.at("aggregation").get<int>());
  model.config_.alpha_estimator =
      static_cast<AlphaEstimatorKind>(j.at("alpha_estimator").get<int>());
  model.config_.alpha_quantile_gamma = j.at("alpha_quantile_gamma").get<double>();
  model.config_.alpha_min = j.at("alpha_min").get<double>();
  model.config_.alpha_max = j.at("alpha_max").get<double>();
  model.config_.log_offset = j.at("log_offset").get<double>();
  model.config_.features.base_window = j.at("feature_base_window").get<double>();
  model.config_.features.gamma_list = j.at("feature_gamma_list").get<std::vector<double>>();
  for (const auto& m : j.at("count_models")) {
    model.count_models_.push_back(TreeEnsembleRegressor::from_json(m));
  }
  model.alpha_model_ = TreeEnsembleRegressor::from_json(j.at("alpha_model"));
  return model;
}

void ForecastModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("ForecastModel::save: cannot open " + path);
  out << to_json().dump() << '\n';
}

ForecastModel ForecastModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ForecastModel::load: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

double relative_growth_chi(double x, double Sigma2, double c, double eps_conf) {
  if (!(x > 0.0)) throw std::domain_error("relative_growth_chi: x must be > 0");
  if (!(c > 1.0)) throw std::domain_error("relative_growth_chi: c must be > 1");
  if (!(eps_conf > 0.0 && eps_conf <= 1.0))
    throw std::domain_error("relative_growth_chi: eps_conf must be in (0, 1]");
  const double q = Sigma2 / (2.0 * eps_conf * x);
  return q + std::sqrt(2.0 * (c - 1.0) * q + q * q);
}

GrowthDecision relative_growth_decision(double lambda_s, double n_s, double alpha, double Sigma2,
                                        double c, double eps_conf, bool use_expected_value_rule) {
  if (!(n_s >= 1.0)) throw std::domain_error("relative_growth_decision: N(s) must be >= 1");
  const double slack = use_expected_value_rule ? 0.0 : relative_growth_chi(n_s, Sigma2, c, eps_conf);
  const double threshold = (c - 1.0 + slack) * alpha * n_s;
  return lambda_s >= threshold ? GrowthDecision::exceeds : GrowthDecision::not_exceeds;
}

}  // namespace hawkescast
