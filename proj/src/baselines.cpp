#include "hawkescast/baselines.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hawkescast/kernels.hpp"
#include "hawkescast/numeric.hpp"
#include "hawkescast/rng.hpp"

namespace hawkescast {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
}  // namespace

double lognormal_pdf(double t, double mu, double sigma) {
  if (t <= 0.0) return 0.0;
  const double z = (std::log(t) - mu) / sigma;
  return std::exp(-0.5 * z * z) / (t * sigma * kSqrt2Pi);
}

double lognormal_cdf(double t, double mu, double sigma) {
  if (t <= 0.0) return 0.0;
  const double z = (std::log(t) - mu) / sigma;
  return 0.5 * std::erfc(-z / kSqrt2);
}

double lognormal_quantile(double q, double mu, double sigma) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("lognormal_quantile: q must be in (0, 1)");
  // Acklam's rational approximation of the inverse normal CDF, refined with
  // one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (q < plow) {
    const double u = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (q <= 1.0 - plow) {
    const double u = q - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - q));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / kSqrt2) - q;
  const double pdf = std::exp(-0.5 * x * x) / kSqrt2Pi;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  (void)pdf;
  return std::exp(mu + sigma * x);
}

namespace {

// RPP log-likelihood of events in (0, s], conditioning on the first event.
double rpp_log_likelihood(const std::vector<double>& times, double s, const RppParams& prm) {
  const std::size_t n = times.size();
  double ll = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double f = lognormal_pdf(times[i], prm.mu_ln, prm.sigma_ln);
    if (f <= 0.0) return -1e300;
    ll += std::log(prm.p * f * static_cast<double>(i));
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double upper = (i + 1 < n) ? times[i + 1] : s;
    integral += static_cast<double>(i + 1) *
                (lognormal_cdf(upper, prm.mu_ln, prm.sigma_ln) -
                 lognormal_cdf(times[i], prm.mu_ln, prm.sigma_ln));
  }
  return ll - prm.p * integral;
}

// Nelder-Mead on R^3; returns (best point, best value, iterations used).
struct SimplexResult {
  std::array<double, 3> x;
  double value;
  int iterations;
  bool converged;
};

SimplexResult nelder_mead(const std::function<double(const std::array<double, 3>&)>& objective,
                          std::array<double, 3> start, double step, int max_iter, double tol) {
  constexpr int dim = 3;
  std::array<std::array<double, 3>, dim + 1> pts;
  std::array<double, dim + 1> vals;
  pts[0] = start;
  for (int i = 1; i <= dim; ++i) {
    pts[static_cast<std::size_t>(i)] = start;
    pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] += step;
  }
  for (int i = 0; i <= dim; ++i) vals[static_cast<std::size_t>(i)] = objective(pts[static_cast<std::size_t>(i)]);

  int iter = 0;
  bool converged = false;
  auto order = [&] {
    for (int i = 0; i <= dim; ++i)
      for (int j = i + 1; j <= dim; ++j)
        if (vals[static_cast<std::size_t>(j)] < vals[static_cast<std::size_t>(i)]) {
          std::swap(vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(j)]);
          std::swap(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
        }
  };
  for (; iter < max_iter; ++iter) {
    order();
    if (std::abs(vals[dim] - vals[0]) < tol) {
      converged = true;
      break;
    }
    std::array<double, 3> centroid{};
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) centroid[static_cast<std::size_t>(k)] += pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / dim;
    auto point_at = [&](double coef) {
      std::array<double, 3> p;
      for (int k = 0; k < dim; ++k)
        p[static_cast<std::size_t>(k)] = centroid[static_cast<std::size_t>(k)] +
                                         coef * (centroid[static_cast<std::size_t>(k)] - pts[dim][static_cast<std::size_t>(k)]);
      return p;
    };
    const auto refl = point_at(1.0);
    const double fr = objective(refl);
    if (fr < vals[0]) {
      const auto exp_pt = point_at(2.0);
      const double fe = objective(exp_pt);
      if (fe < fr) {
        pts[dim] = exp_pt;
        vals[dim] = fe;
      } else {
        pts[dim] = refl;
        vals[dim] = fr;
      }
    } else if (fr < vals[dim - 1]) {
      pts[dim] = refl;
      vals[dim] = fr;
    } else {
      const auto contr = point_at(fr < vals[dim] ? 0.5 : -0.5);
      const double fc = objective(contr);
      if (fc < std::min(fr, vals[dim])) {
        pts[dim] = contr;
        vals[dim] = fc;
      } else {
        for (int i = 1; i <= dim; ++i) {
          for (int k = 0; k < dim; ++k)
            pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                0.5 * (pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] + pts[0][static_cast<std::size_t>(k)]);
          vals[static_cast<std::size_t>(i)] = objective(pts[static_cast<std::size_t>(i)]);
        }
      }
    }
  }
  order();
  return {pts[0], vals[0], iter, converged};
}

}  // namespace

RppFitResult rpp_fit(const Cascade& cascade, double s) {
  std::vector<double> times;
  for (const auto& e : cascade.events) {
    if (e.time < s && e.time > 0.0) times.push_back(e.time);
  }
  if (times.size() < 2) throw std::domain_error("rpp_fit: need at least 2 events before s");

  const auto t0 = std::chrono::steady_clock::now();
  // Parameters optimized as (log p, mu_ln, log sigma_ln).
  auto objective = [&](const std::array<double, 3>& x) {
    RppParams prm{std::exp(x[0]), x[1], std::exp(x[2])};
    if (prm.p > 1e6 || prm.sigma_ln > 1e3 || prm.sigma_ln < 1e-6) return 1e300;
    return -rpp_log_likelihood(times, s, prm);
  };

  double log_mean_t = 0.0;
  for (double t : times) log_mean_t += std::log(t);
  log_mean_t /= static_cast<double>(times.size());

  const std::array<std::array<double, 3>, 3> starts = {{
      {std::log(0.5), log_mean_t, std::log(1.0)},
      {std::log(2.0), log_mean_t + 1.0, std::log(0.5)},
      {std::log(0.1), log_mean_t - 1.0, std::log(2.0)},
  }};

  RppFitResult out;
  double best = 1e301;
  int total_iter = 0;
  bool any_converged = false;
  for (const auto& start : starts) {
    const auto res = nelder_mead(objective, start, 0.5, 500, 1e-8);
    total_iter += res.iterations;
    any_converged = any_converged || res.converged;
    if (res.value < best) {
      best = res.value;
      out.params = {std::exp(res.x[0]), res.x[1], std::exp(res.x[2])};
      out.log_likelihood = -res.value;
    }
  }
  out.iterations = total_iter;
  out.converged = any_converged;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double rpp_predict(const RppParams& params, double n_s, double s, double t) {
  if (!(t >= s)) throw std::domain_error("rpp_predict: t must be >= s");
  const double f_t = is_infinite_horizon(t) ? 1.0 : lognormal_cdf(t, params.mu_ln, params.sigma_ln);
  const double f_s = lognormal_cdf(s, params.mu_ln, params.sigma_ln);
  return n_s * std::exp(params.p * (f_t - f_s));
}

Cascade rpp_simulate(const RppParams& params, double t_first, double t_max,
                     std::size_t max_events, std::uint64_t seed) {
  if (!(t_first > 0.0)) throw std::invalid_argument("rpp_simulate: t_first must be > 0");
  CounterRng rng(seed);
  Cascade out;
  out.events.push_back({t_first, 0.0});
  double t = t_first;
  while (out.events.size() < max_events) {
    const double n = static_cast<double>(out.events.size());
    // Integrated hazard p*n*(F(t') - F(t)) = E  =>  F(t') = F(t) + E/(p n).
    const double target = lognormal_cdf(t, params.mu_ln, params.sigma_ln) +
                          rng.exponential() / (params.p * n);
    if (target >= 1.0) break;
    t = lognormal_quantile(target, params.mu_ln, params.sigma_ln);
    if (t > t_max) break;
    out.events.push_back({t, 0.0});
  }
  out.truncated = out.events.size() >= max_events;
  return out;
}

double seismic_estimate_p(const Cascade& cascade, double s, const SeismicConfig& config) {
  double numerator = 0.0;
  double denominator = 0.0;
  const double w = config.smoothing_window > 0.0 ? config.smoothing_window : config.kernel.tau_cut;
  for (const auto& e : cascade.events) {
    if (e.time >= s) break;
    // Triangular discount of events near s, as in the reference SEISMIC
    // implementation; weight 1 outside the trailing window.
    double weight = 1.0;
    if (config.smoothing) {
      const double age = s - e.time;
      if (age < w) weight = age / w;
    }
    numerator += weight;
    denominator += weight * config.d_const * kernel_power_law_primitive(s - e.time, config.kernel);
  }
  if (denominator <= 0.0) throw std::domain_error("seismic_estimate_p: zero denominator");
  return numerator / denominator;
}

SeismicPrediction seismic_predict(const Cascade& cascade, double s, double p_hat,
                                  const SeismicConfig& config) {
  SeismicPrediction out;
  const double n_s = static_cast<double>(cascade.count_before(s));
  if (p_hat <= 0.0) {
    out.value = n_s;
    return out;
  }
  const double total_mass = kernel_power_law_total_mass(config.kernel);
  double branching = p_hat * config.d_const * total_mass;
  if (branching >= 1.0) {
    branching = 0.99;
    out.capped = true;
  }
  // Residual first-generation mass of the observed events under kernel
  // p_hat * phi and marks d_const.
  double residual = 0.0;
  for (const auto& e : cascade.events) {
    if (e.time >= s) break;
    residual += config.d_const * p_hat *
                (total_mass - kernel_power_law_primitive(s - e.time, config.kernel));
  }
  out.value = n_s + residual / (1.0 - branching);
  return out;
}

namespace {

// Shared builder: examples for a set of horizons, one label per (s, horizon).
struct FlatExample {
  std::vector<double> features;
  double label;
  std::size_t horizon_index;
};

std::vector<FlatExample> build_flat_examples(const std::vector<Cascade>& dataset,
                                             const std::vector<double>& horizons,
                                             const SamplingPolicy& policy,
                                             const ForecastConfig& config, double t_cover,
                                             bool append_log_delta) {
  std::vector<FlatExample> out;
  const auto times = policy.prediction_times();
  for (const auto& cascade : dataset) {
    for (double s : times) {
      std::vector<double> base;
      bool built = false;
      for (std::size_t h = 0; h < horizons.size(); ++h) {
        if (s + horizons[h] > t_cover) continue;
        if (!built) {
          base = extract_features(cascade, s, config.features);
          built = true;
        }
        const auto n_s = static_cast<double>(cascade.count_before(s));
        const auto n_end = static_cast<double>(cascade.count_before(s + horizons[h]));
        FlatExample ex;
        ex.features = base;
        if (append_log_delta) ex.features.push_back(std::log(horizons[h]));
        ex.label = std::log(n_end - n_s + config.log_offset);
        ex.horizon_index = h;
        out.push_back(std::move(ex));
      }
    }
  }
  return out;
}

}  // namespace

PbModels PbModels::train(const std::vector<Cascade>& dataset, const std::vector<double>& horizons,
                         const SamplingPolicy& policy, const ForecastConfig& config,
                         double t_cover) {
  PbModels out;
  out.horizons_ = horizons;
  out.config_ = config;
  const auto examples = build_flat_examples(dataset, horizons, policy, config, t_cover, false);
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    std::vector<std::vector<double>> rows;
    std::vector<double> labels;
    for (const auto& ex : examples) {
      if (ex.horizon_index != h) continue;
      rows.push_back(ex.features);
      labels.push_back(ex.label);
    }
    if (rows.empty()) throw std::invalid_argument("PbModels::train: no examples for a horizon");
    TreeEnsembleRegressor reg(config.learner);
    reg.fit(rows, labels);
    out.models_.push_back(std::move(reg));
  }
  return out;
}

std::optional<double> PbModels::predict(std::span<const double> features, double n_s,
                                        double delta) const {
  for (std::size_t h = 0; h < horizons_.size(); ++h) {
    if (horizons_[h] == delta) {
      const double inc = std::exp(models_[h].predict(features)) - config_.log_offset;
      return n_s + std::max(inc, 0.0);
    }
  }
  return std::nullopt;  // PB has no extrapolation rule
}

HfModel HfModel::train(const std::vector<Cascade>& dataset,
                       const std::vector<double>& sampled_horizons, const SamplingPolicy& policy,
                       const ForecastConfig& config, double t_cover) {
  HfModel out;
  out.horizons_ = sampled_horizons;
  out.config_ = config;
  const auto examples =
      build_flat_examples(dataset, sampled_horizons, policy, config, t_cover, true);
  if (examples.empty()) throw std::invalid_argument("HfModel::train: no examples");
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  rows.reserve(examples.size());
  for (const auto& ex : examples) {
    rows.push_back(ex.features);
    labels.push_back(ex.label);
  }
  TreeEnsembleRegressor reg(config.learner);
  reg.fit(rows, labels);
  out.model_ = std::move(reg);
  return out;
}

double HfModel::predict(std::span<const double> features, double n_s, double delta) const {
  std::vector<double> row(features.begin(), features.end());
  row.push_back(std::log(delta));
  const double inc = std::exp(model_.predict(row)) - config_.log_offset;
  return n_s + std::max(inc, 0.0);
}

}  // namespace hawkescast
