#include <cmath>
#include <cstdio>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "hawkescast/forecaster.hpp"
#include "hawkescast/numeric.hpp"
#include "hawkescast/sim.hpp"

using namespace hawkescast;

namespace {

std::vector<Cascade> training_batch() {
  HeterogeneityConfig het;
  het.log_beta_mean = std::log(1.0 / 3600.0);
  het.log_beta_sigma = 0.4;
  het.rho1_min = 0.1;
  het.rho1_max = 0.6;
  het.log_lambda0_mean = std::log(50.0 / 3600.0);
  het.log_lambda0_sigma = 0.5;
  het.t_max = 14 * 86400.0;
  het.max_events = 50000;
  return simulate_batch(2024, 80, het);
}

ForecastConfig small_config() {
  ForecastConfig cfg;
  cfg.ref_horizons = {86400.0};
  cfg.learner.n_trees = 30;
  return cfg;
}

SamplingPolicy small_policy() {
  SamplingPolicy policy;
  policy.s_min = 3600.0;
  policy.s_max = 2 * 86400.0;
  policy.samples_per_item = 3;
  return policy;
}

}  // namespace

TEST_CASE("config validation") {
  ForecastConfig cfg;
  cfg.ref_horizons = {};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.ref_horizons = {3600.0, 3600.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.ref_horizons = {3600.0, 86400.0};
  cfg.aggregation = Aggregation::single;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.aggregation = Aggregation::geometric;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("log-spaced prediction times") {
  SamplingPolicy policy;
  policy.s_min = 100.0;
  policy.s_max = 10000.0;
  policy.samples_per_item = 3;
  const auto times = policy.prediction_times();
  REQUIRE(times.size() == 3);
  CHECK(times[0] == doctest::Approx(100.0));
  CHECK(times[1] == doctest::Approx(1000.0));
  CHECK(times[2] == doctest::Approx(10000.0));
}

TEST_CASE("training labels on a hand-built cascade") {
  Cascade c;
  for (double t : {10.0, 20.0, 150.0, 900.0, 2000.0, 5000.0}) c.events.push_back({t, 1.0});
  ForecastConfig cfg;
  cfg.ref_horizons = {1000.0};
  SamplingPolicy policy;
  policy.s_min = 100.0;
  policy.s_max = 100.0;
  policy.samples_per_item = 1;
  const auto set = build_training_set({c}, policy, cfg, /*t_cover=*/1e9);
  REQUIRE(set.samples.size() == 1);
  // N(100) = 2, N(1100) = 4; increment 2, label log(2 + 1).
  CHECK(set.samples[0].count_labels[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  // alpha label: log(clamp(n / sum T_i)) = log(6 / 8080).
  CHECK(set.samples[0].alpha_label == doctest::Approx(std::log(6.0 / 8080.0)).epsilon(1e-12));

  // Insufficient coverage drops the example and counts it.
  const auto dropped = build_training_set({c}, policy, cfg, /*t_cover=*/500.0);
  CHECK(dropped.samples.empty());
  CHECK(dropped.dropped_truncated == 1);
}

TEST_CASE("single-horizon model: passthrough and extrapolation") {
  const auto data = training_batch();
  const auto cfg = small_config();
  const auto set = build_training_set(data, small_policy(), cfg, 14 * 86400.0);
  REQUIRE(set.samples.size() > 100);
  const auto model = ForecastModel::fit(set, cfg);
  CHECK_FALSE(model.degenerate());

  const auto& f = set.samples[7].features;
  const double n_s = f[5];  // static attrs are 5-wide; feature 5 is N(s)
  const double ref = cfg.ref_horizons[0];

  // At the reference horizon the point regressor passes through untouched.
  const double inc_star = std::exp(model.point_prediction(f, 0)) - cfg.log_offset;
  CHECK(model.predict(f, n_s, ref) == n_s + inc_star);

  // Elsewhere the closed-form ratio applies.
  const double alpha = model.predict_alpha(f);
  for (double delta : {3600.0, 4 * 86400.0}) {
    const double want =
        n_s + inc_star * one_minus_exp_neg(alpha * delta) / one_minus_exp_neg(alpha * ref);
    CHECK(model.predict(f, n_s, delta) == doctest::Approx(want).epsilon(1e-12));
  }
  // Infinite horizon: the implied asymptote.
  const double want_inf = n_s + inc_star / one_minus_exp_neg(alpha * ref);
  CHECK(model.predict(f, n_s, kInfiniteHorizon) == doctest::Approx(want_inf).epsilon(1e-12));
  // Predictions are monotone in delta when the predicted increment is positive.
  if (inc_star > 0.0) {
    CHECK(model.predict(f, n_s, 3600.0) <= model.predict(f, n_s, 86400.0) + 1e-9);
    CHECK(model.predict(f, n_s, 86400.0) <= model.predict(f, n_s, kInfiniteHorizon) + 1e-9);
  }
}

TEST_CASE("multi-horizon aggregation matches the hand-computed form") {
  const auto data = training_batch();
  ForecastConfig cfg;
  cfg.ref_horizons = {6 * 3600.0, 86400.0, 4 * 86400.0};
  cfg.aggregation = Aggregation::arithmetic;
  cfg.learner.n_trees = 30;
  SamplingPolicy policy = small_policy();
  policy.s_max = 86400.0;
  const auto set = build_training_set(data, policy, cfg, 14 * 86400.0);
  const auto model = ForecastModel::fit(set, cfg);

  const auto& f = set.samples[3].features;
  const double n_s = f[5];
  const double alpha = model.predict_alpha(f);
  std::vector<double> asym;
  for (std::size_t i = 0; i < cfg.ref_horizons.size(); ++i) {
    const double inc = std::exp(model.point_prediction(f, i)) - cfg.log_offset;
    asym.push_back(std::max(inc, 0.0) / one_minus_exp_neg(alpha * cfg.ref_horizons[i]));
  }
  const double delta = 2 * 86400.0;
  double mean = (asym[0] + asym[1] + asym[2]) / 3.0;
  CHECK(model.predict_arithmetic(f, n_s, delta) ==
        doctest::Approx(n_s + mean * one_minus_exp_neg(alpha * delta)).epsilon(1e-12));
  double geo = std::cbrt(std::max(asym[0], 1e-12) * std::max(asym[1], 1e-12) *
                         std::max(asym[2], 1e-12));
  CHECK(model.predict_geometric(f, n_s, delta) ==
        doctest::Approx(n_s + geo * one_minus_exp_neg(alpha * delta)).epsilon(1e-9));
}

TEST_CASE("model save/load round trip") {
  const auto data = training_batch();
  const auto cfg = small_config();
  const auto set = build_training_set(data, small_policy(), cfg, 14 * 86400.0);
  const auto model = ForecastModel::fit(set, cfg);

  const std::string path = "forecast_model_roundtrip.json";
  model.save(path);
  const auto restored = ForecastModel::load(path);
  for (std::size_t i = 0; i < 20; ++i) {
    const auto& f = set.samples[i].features;
    CHECK(restored.predict(f, 10.0, 7200.0) == model.predict(f, 10.0, 7200.0));
    CHECK(restored.predict_alpha(f) == model.predict_alpha(f));
  }
  std::remove(path.c_str());

  nlohmann::json bad = model.to_json();
  bad["format"] = "something.else";
  CHECK_THROWS_AS(ForecastModel::from_json(bad), std::invalid_argument);
  nlohmann::json old = model.to_json();
  old["schema_version"] = 99;
  CHECK_THROWS_AS(ForecastModel::from_json(old), std::invalid_argument);
}

TEST_CASE("relative growth rule") {
  const double alpha = 0.01, n_s = 100.0, c = 2.0;
  // Expected-value rule: threshold is exactly (c-1) * alpha * N(s).
  const double thr = (c - 1.0) * alpha * n_s;
  CHECK(relative_growth_decision(thr, n_s, alpha, 1.0, c, 0.1, true) == GrowthDecision::exceeds);
  CHECK(relative_growth_decision(thr * 0.999, n_s, alpha, 1.0, c, 0.1, true) ==
        GrowthDecision::not_exceeds);

  // chi closed form at q = Sigma2 / (2 eps x).
  const double Sigma2 = 2.0, eps = 0.05;
  const double q = Sigma2 / (2.0 * eps * n_s);
  CHECK(relative_growth_chi(n_s, Sigma2, c, eps) ==
        doctest::Approx(q + std::sqrt(2.0 * (c - 1.0) * q + q * q)).epsilon(1e-15));
  // Slack shrinks with popularity and the confidence rule is the stricter one.
  CHECK(relative_growth_chi(10.0, Sigma2, c, eps) > relative_growth_chi(1000.0, Sigma2, c, eps));
  CHECK(relative_growth_decision(thr, n_s, alpha, Sigma2, c, eps) == GrowthDecision::not_exceeds);
  CHECK_THROWS_AS(relative_growth_chi(0.0, Sigma2, c, eps), std::domain_error);
  CHECK_THROWS_AS(relative_growth_decision(1.0, 0.0, alpha, Sigma2, c, eps), std::domain_error);
}
