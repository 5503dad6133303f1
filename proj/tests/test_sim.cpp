#include <cmath>
#include <numeric>

#include "doctest.h"
#include "hawkescast/kernels.hpp"
#include "hawkescast/sim.hpp"

using namespace hawkescast;

namespace {

bool same_events(const Cascade& a, const Cascade& b) {
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    if (a.events[i].time != b.events[i].time || a.events[i].mark != b.events[i].mark) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.exp_params = {1.0, 1.0, 1.0, 1.0};  // rho1 = 1: critical
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  SimConfig pl;
  pl.kernel = KernelKind::power_law;
  pl.pl_params = {1.0, 1.0, 1.0, 1.0};  // total mass 2, supercritical
  CHECK_THROWS_AS(pl.validate(), std::invalid_argument);
  pl.pl_params = {0.1, 1.0, 1.0, 1.0};  // mass 0.2
  CHECK_NOTHROW(pl.validate());
  pl.track_generations = true;
  CHECK_THROWS_AS(pl.validate(), std::invalid_argument);
}

TEST_CASE("simulation is deterministic in the seed") {
  SimConfig cfg;
  cfg.exp_params = {0.01, 0.6, 0.72, 0.05};
  cfg.mark_law = MarkLaw::exponential;
  cfg.seed = 42;
  const auto a = simulate(cfg);
  const auto b = simulate(cfg);
  CHECK(same_events(a.cascade, b.cascade));
  cfg.seed = 43;
  const auto c = simulate(cfg);
  CHECK_FALSE(same_events(a.cascade, c.cascade));
  a.cascade.validate();
}

TEST_CASE("mark laws hit the requested moments") {
  const double rho1 = 0.45, rho2 = 0.5;
  for (MarkLaw law : {MarkLaw::exponential, MarkLaw::lognormal}) {
    CounterRng rng(17);
    const int n = 200000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = draw_mark_scale(rng, law, rho1, rho2);
      m1 += z;
      m2 += z * z;
    }
    m1 /= n;
    m2 /= n;
    const double want2 = law == MarkLaw::exponential ? 2.0 * rho1 * rho1 : rho2;
    CHECK(m1 == doctest::Approx(rho1).epsilon(0.02));
    CHECK(m2 == doctest::Approx(want2).epsilon(0.05));
  }
  CounterRng rng(3);
  CHECK(draw_mark_scale(rng, MarkLaw::constant, rho1, rho2) == rho1);
}

TEST_CASE("mean total size matches lambda0/alpha") {
  // E[N(inf)] = (lambda0/beta) / (1 - rho1) = lambda0 / alpha.
  SimConfig cfg;
  cfg.exp_params = {1.0, 0.4, 0.16, 2.0};
  cfg.mark_law = MarkLaw::constant;
  const double want = cfg.exp_params.lambda0 / cfg.exp_params.alpha();

  const int reps = 4000;
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < reps; ++r) {
    cfg.seed = 1000 + r;
    const double n = static_cast<double>(simulate(cfg).cascade.events.size());
    sum += n;
    sumsq += n * n;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sumsq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - want) < 3.0 * se + 1e-9);
}

TEST_CASE("branching simulation: generations and offspring counts") {
  SimConfig cfg;
  cfg.exp_params = {0.5, 0.5, 0.25, 1.0};
  cfg.mark_law = MarkLaw::constant;
  cfg.track_generations = true;

  const int reps = 3000;
  double gen0 = 0.0, total = 0.0;
  for (int r = 0; r < reps; ++r) {
    cfg.seed = 7000 + r;
    const auto res = simulate(cfg);
    REQUIRE(res.generations.size() == res.cascade.events.size());
    res.cascade.validate();
    for (std::size_t i = 0; i < res.generations.size(); ++i) {
      CHECK(res.generations[i] >= 0);
    }
    for (int g : res.generations) gen0 += g == 0 ? 1.0 : 0.0;
    total += static_cast<double>(res.cascade.events.size());
  }
  // Generation 0 is Poisson(lambda0/beta) = Poisson(2).
  CHECK(gen0 / reps == doctest::Approx(cfg.exp_params.lambda0 / cfg.exp_params.beta).epsilon(0.05));
  // Total mean is lambda0/alpha = 1/0.25 = 4.
  CHECK(total / reps ==
        doctest::Approx(cfg.exp_params.lambda0 / cfg.exp_params.alpha()).epsilon(0.05));
}

TEST_CASE("thinning and branching agree on the mean") {
  SimConfig cfg;
  cfg.exp_params = {1.0, 0.5, 0.5, 1.5};
  cfg.mark_law = MarkLaw::exponential;
  const int reps = 3000;
  double thin = 0.0, branch = 0.0;
  for (int r = 0; r < reps; ++r) {
    cfg.seed = r;
    cfg.track_generations = false;
    thin += static_cast<double>(simulate(cfg).cascade.events.size());
    cfg.track_generations = true;
    branch += static_cast<double>(simulate(cfg).cascade.events.size());
  }
  thin /= reps;
  branch /= reps;
  CHECK(thin == doctest::Approx(branch).epsilon(0.06));
  CHECK(thin == doctest::Approx(cfg.exp_params.lambda0 / cfg.exp_params.alpha()).epsilon(0.06));
}

TEST_CASE("power-law simulation basics") {
  SimConfig cfg;
  cfg.kernel = KernelKind::power_law;
  cfg.pl_params = {0.02, 10.0, 1.0, 1.0};  // total mass 0.4 per unit mark
  cfg.pl_lambda0 = 1.0;
  cfg.pl_mark_value = 1.0;
  cfg.seed = 5;
  CHECK(cfg.branching_ratio() == doctest::Approx(0.4));
  const auto a = simulate(cfg);
  const auto b = simulate(cfg);
  CHECK(same_events(a.cascade, b.cascade));
  a.cascade.validate();
  // Mean total size: baseline mass * 1/(1-mu) = (lambda0/phi0 * mass) / 0.6.
  const int reps = 2000;
  double total = 0.0;
  for (int r = 0; r < reps; ++r) {
    cfg.seed = 100 + r;
    total += static_cast<double>(simulate(cfg).cascade.events.size());
  }
  const double base_mean = cfg.pl_lambda0 / cfg.pl_params.phi0 *
                           kernel_power_law_total_mass(cfg.pl_params);
  CHECK(total / reps == doctest::Approx(base_mean / 0.6).epsilon(0.08));
}

TEST_CASE("batch simulation and per-item parameters") {
  HeterogeneityConfig het;
  het.attr_noise_sigma = 0.0;
  het.max_events = 20000;
  const auto batch = simulate_batch(99, 10, het);
  REQUIRE(batch.size() == 10);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto p = batch_item_params(99, i, het);
    REQUIRE(batch[i].static_attrs.size() == 5);
    // With zero attribute noise the first three attributes are exact.
    CHECK(batch[i].static_attrs[0] == doctest::Approx(std::log(p.beta)).epsilon(1e-12));
    CHECK(batch[i].static_attrs[1] == doctest::Approx(p.rho1).epsilon(1e-12));
    CHECK(batch[i].static_attrs[2] == doctest::Approx(std::log(p.lambda0)).epsilon(1e-12));
    batch[i].validate();
    CHECK(p.rho1 >= het.rho1_min);
    CHECK(p.rho1 <= het.rho1_max);
  }
  // Reproducible.
  const auto again = simulate_batch(99, 10, het);
  for (std::size_t i = 0; i < batch.size(); ++i) CHECK(same_events(batch[i], again[i]));
}
