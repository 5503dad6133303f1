#pragma once

#include <utility>

#include "hawkescast/types.hpp"

namespace hawkescast {

/// Streaming accumulator for the exponential-kernel stochastic intensity.
/// lambda(t) = lambda(0) e^{-beta t} + sum_i Y_i e^{-beta (t - T_i)}.
/// State is a single decayed value; update cost is O(1) per event.
class IntensityAccumulator {
 public:
  IntensityAccumulator(double lambda0, double beta) : value_(lambda0), beta_(beta) {}

  // Advance to time t (monotone) without an event.
  void advance(double t);
  // Register an event at time t with intensity jump y; the returned value is
  // the intensity just before the jump, lambda(t).
  double observe(double t, double y);

  double value() const { return value_; }
  double time() const { return time_; }

 private:
  double value_;
  double beta_;
  double time_ = 0.0;
};

/// Exact stochastic intensity lambda(t) of an exponential-kernel cascade,
/// using events strictly before t.
double intensity_at(const Cascade& cascade, const HawkesExpParams& params, double t);

/// Lambda(s, t) for the exponential kernel: expected first-generation count
/// in [s, t] given lambda(s). Equals lambda(s)/beta at t = +inf.
double residual_mass_exp(double lambda_s, double beta, double s, double t);

/// Lambda(s, t) for the power-law kernel with baseline
/// lambda_0(t) = lambda0 * phi(t)/phi(0) and event kernels y_i * p * phi(.).
double residual_mass_power_law(const Cascade& cascade, const PowerLawKernelParams& kernel,
                               double lambda0, double s, double t);

/// E[N(s+delta) - N(s) | F_s] = (1/alpha)(1 - e^{-alpha delta}) lambda(s).
/// delta = +inf gives the infinite-horizon limit lambda(s)/alpha.
double expected_count_exp(double lambda_s, double alpha, double delta);

inline double expected_count_exp(double lambda_s, const HawkesExpParams& params, double delta) {
  return expected_count_exp(lambda_s, params.alpha(), delta);
}

/// Bounds on the conditional expected count for any stable Hawkes process:
/// Lambda(s,t) <= E[N(t)-N(s) | F_s] <= Lambda(s,t)/(1-mu).
std::pair<double, double> count_bounds(double Lambda_st, double mu);

/// Var[N(s+delta) - N(s) | F_s] for the exponential kernel; delta = +inf
/// gives Sigma^2 * lambda(s)/alpha.
double conditional_variance_exp(double lambda_s, const HawkesExpParams& params, double delta);

/// tau_gamma = log(1/(1-gamma)) / alpha, the horizon at which the expected
/// count reaches fraction gamma of its limit.
double characteristic_time(double gamma, double alpha);

/// c_gamma = log(1/(1-gamma)).
double quantile_scale(double gamma);

}  // namespace hawkescast
