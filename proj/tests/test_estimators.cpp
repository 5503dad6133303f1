#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hawkescast/estimators.hpp"
#include "hawkescast/rng.hpp"

using namespace hawkescast;

namespace {

Cascade from_times(std::vector<double> times) {
  Cascade c;
  for (double t : times) c.events.push_back({t, 1.0});
  return c;
}

}  // namespace

TEST_CASE("velocity tracker window counts") {
  VelocityTracker tracker(64.0, 64);  // bucket width exactly 1
  std::vector<double> times;
  CounterRng rng(12);
  double t = 0.0;
  for (int i = 0; i < 500; ++i) {
    t += rng.exponential(2.0);
    times.push_back(t);
    tracker.observe(t);
  }
  const double s = t;
  // Brute-force count over [s - 64, s]; the tracker's left edge is bucket
  // aligned, so allow one bucket of slack on each side.
  auto brute = [&](double lo, double hi) {
    return static_cast<double>(
        std::count_if(times.begin(), times.end(), [&](double u) { return u >= lo && u <= hi; }));
  };
  const double got = tracker.window_count(s);
  CHECK(got >= brute(s - 63.0, s));
  CHECK(got <= brute(s - 65.0, s));
  CHECK(tracker.velocity(s) == doctest::Approx(got / 64.0));
  CHECK(tracker.total_count() == 500);
}

TEST_CASE("velocity tracker rejects out-of-order input") {
  VelocityTracker tracker(10.0);
  tracker.observe(5.0);
  CHECK_THROWS_AS(tracker.observe(4.0), std::invalid_argument);
  CHECK_THROWS_AS(tracker.observe(-1.0), std::invalid_argument);
}

TEST_CASE("velocity tracker expires old events") {
  VelocityTracker tracker(10.0, 10);
  tracker.observe(1.5);
  tracker.observe(2.5);
  CHECK(tracker.window_count(3.0) == doctest::Approx(2.0));
  // 200 time units later both are far outside the window.
  tracker.observe(200.0);
  CHECK(tracker.window_count(200.0) == doctest::Approx(1.0));
  CHECK(tracker.total_count() == 3);
}

TEST_CASE("power-of-two checkpoints") {
  VelocityTracker tracker(100.0);
  // Event k happens at time 10*k.
  for (int k = 1; k <= 40; ++k) tracker.observe(10.0 * k);
  CHECK(tracker.checkpoint_time_at_least(1) == doctest::Approx(10.0));
  CHECK(tracker.checkpoint_time_at_least(2) == doctest::Approx(20.0));
  CHECK(tracker.checkpoint_time_at_least(3) == doctest::Approx(40.0));   // next pow2 is 4
  CHECK(tracker.checkpoint_time_at_least(20) == doctest::Approx(320.0));  // 32nd event
  CHECK(tracker.checkpoint_time_at_least(33) == doctest::Approx(400.0));  // beyond: last time
}

TEST_CASE("mean-value estimator on known times") {
  // times {1,2,3,4}: alpha_hat = 4 / 10.
  const Cascade c = from_times({1.0, 2.0, 3.0, 4.0});
  CHECK(alpha_mean(c) == doctest::Approx(0.4).epsilon(1e-15));
  // Offset 2: events {2,3,4} re-based to {0,1,2}: 3/3 = 1.
  CHECK(alpha_mean(c, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_mean(Cascade{}), std::domain_error);
  CHECK_THROWS_AS(alpha_mean(from_times({0.0})), std::domain_error);
}

TEST_CASE("mean-value estimator recovers the decay rate of a Poisson tail") {
  // Pure decaying Poisson (rho1 = 0): event times are iid with density
  // beta e^{-beta t}, so n / sum(T_i) -> beta = alpha.
  const double beta = 0.037;
  CounterRng rng(5);
  std::vector<double> times;
  for (int i = 0; i < 20000; ++i) times.push_back(rng.exponential(beta));
  std::sort(times.begin(), times.end());
  CHECK(alpha_mean(times) == doctest::Approx(beta).epsilon(0.03));
}

TEST_CASE("quantile-value estimator on known times") {
  const Cascade c = from_times({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  // gamma = 0.5: T_gamma is the 5th event, at t = 5.
  CHECK(alpha_quantile(c, 0.5) == doctest::Approx(std::log(2.0) / 5.0).epsilon(1e-15));
  CHECK(alpha_quantile(c, 0.5, /*raw_reciprocal=*/true) == doctest::Approx(0.2).epsilon(1e-15));
  // gamma = 0.9: 9th event.
  CHECK(alpha_quantile(c, 0.9) ==
        doctest::Approx(std::log(10.0) / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(alpha_quantile(c, 0.0), std::domain_error);
  CHECK_THROWS_AS(alpha_quantile(c, 1.0), std::domain_error);
  CHECK_THROWS_AS(alpha_quantile(Cascade{}, 0.5), std::domain_error);
}

TEST_CASE("remaining-mass integral identity") {
  CounterRng rng(31);
  std::vector<double> times;
  double t = 0.0;
  for (int i = 0; i < 300; ++i) {
    t += rng.exponential(0.3);
    times.push_back(t);
  }
  const Cascade c = from_times(times);
  const auto [integral, sum] = remaining_integral_identity(c);
  // int_0^inf (n - N(t)) dt = sum_i T_i, computed two independent ways.
  CHECK(integral == doctest::Approx(sum).epsilon(1e-9));
  CHECK(sum > 0.0);
}
