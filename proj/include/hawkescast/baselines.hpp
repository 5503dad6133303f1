#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hawkescast/forecaster.hpp"
#include "hawkescast/gbrt.hpp"
#include "hawkescast/types.hpp"

namespace hawkescast {

// ---------------------------------------------------------------------------
// Reinforced Poisson process: intensity p * f(t) * N(t), f lognormal.

struct RppParams {
  double p = 0.1;       // infection rate, > 0
  double mu_ln = 0.0;   // lognormal location of f
  double sigma_ln = 1.0;  // lognormal scale of f, > 0
};

struct RppFitResult {
  RppParams params;
  double log_likelihood = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
  bool converged = true;
};

double lognormal_pdf(double t, double mu, double sigma);
double lognormal_cdf(double t, double mu, double sigma);
double lognormal_quantile(double q, double mu, double sigma);

/// Per-item MLE over (p, mu_ln, sigma_ln); iterative simplex optimizer on
/// log-transformed parameters, 3 restarts, max 500 iterations per restart,
/// tolerance 1e-8 on the log-likelihood. Each likelihood evaluation is
/// O(N(s)), which is what makes this baseline expensive.
RppFitResult rpp_fit(const Cascade& cascade, double s);

/// E[N(t) | F_s] = N(s) * e^{p (F(t) - F(s))}; t = +inf uses F = 1.
double rpp_predict(const RppParams& params, double n_s, double s, double t);

/// Exact RPP simulation by inverse-CDF inter-event sampling, seeded with one
/// event at t_first.
Cascade rpp_simulate(const RppParams& params, double t_first, double t_max,
                     std::size_t max_events, std::uint64_t seed);

// ---------------------------------------------------------------------------
// SEISMIC-CF: power-law Hawkes with constant node degree.

struct SeismicConfig {
  PowerLawKernelParams kernel;  // kernel.p is ignored here; p is estimated
  double d_const = 1.0;         // constant node degree
  bool smoothing = false;       // triangular discount of recent events
  double smoothing_window = 0.0;  // seconds; 0 means kernel.tau_cut
};

/// Closed-form infectiousness estimate p_hat = N(s) / sum_i d_i Phi(s - T_i).
/// Cost is O(N(s)) by construction.
double seismic_estimate_p(const Cascade& cascade, double s, const SeismicConfig& config);

struct SeismicPrediction {
  double value = 0.0;
  bool capped = false;  // supercritical estimate was clamped
};

/// Expected final size: N(s) plus the residual kernel mass of observed events
/// scaled by the geometric-series factor 1/(1 - p_hat * d * int phi).
SeismicPrediction seismic_predict(const Cascade& cascade, double s, double p_hat,
                                  const SeismicConfig& config);

// ---------------------------------------------------------------------------
// Learned baselines sharing the HWK feature pipeline and learner.

/// Point-based models: one regressor per horizon, no extrapolation.
class PbModels {
 public:
  static PbModels train(const std::vector<Cascade>& dataset, const std::vector<double>& horizons,
                        const SamplingPolicy& policy, const ForecastConfig& config, double t_cover);

  /// Predicted N(s + delta); nullopt when delta is not a trained horizon.
  std::optional<double> predict(std::span<const double> features, double n_s, double delta) const;

  const std::vector<double>& horizons() const { return horizons_; }
  const ForecastConfig& config() const { return config_; }

 private:
  std::vector<double> horizons_;
  std::vector<TreeEnsembleRegressor> models_;
  ForecastConfig config_;
};

/// Horizon-as-feature model: a single regressor with log(delta) appended to
/// the features; training examples are replicated across sampled horizons.
class HfModel {
 public:
  static HfModel train(const std::vector<Cascade>& dataset,
                       const std::vector<double>& sampled_horizons, const SamplingPolicy& policy,
                       const ForecastConfig& config, double t_cover);

  double predict(std::span<const double> features, double n_s, double delta) const;

  std::size_t training_inflation() const { return horizons_.size(); }

 private:
  std::vector<double> horizons_;
  TreeEnsembleRegressor model_;
  ForecastConfig config_;
};

}  // namespace hawkescast
