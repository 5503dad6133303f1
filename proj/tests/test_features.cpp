#include <cmath>

#include "doctest.h"
#include "hawkescast/features.hpp"
#include "hawkescast/rng.hpp"

using namespace hawkescast;

namespace {

Cascade sample_cascade() {
  Cascade c;
  c.item_id = "x";
  c.static_attrs = {0.5, -1.0};
  CounterRng rng(8);
  double t = 0.0;
  for (int i = 0; i < 400; ++i) {
    t += rng.exponential(0.01);
    c.events.push_back({t, 1.0});
  }
  return c;
}

}  // namespace

TEST_CASE("feature vector layout and values") {
  FeatureConfig cfg;
  const Cascade c = sample_cascade();
  const double s = c.events[199].time + 1.0;  // 200 events strictly before s
  const auto f = extract_features(c, s, cfg);
  REQUIRE(f.size() == c.static_attrs.size() + cfg.temporal_dim());
  CHECK(f[0] == 0.5);
  CHECK(f[1] == -1.0);
  const std::size_t base = c.static_attrs.size();
  CHECK(f[base + 0] == doctest::Approx(200.0));                 // N(s)
  CHECK(f[base + 7] == doctest::Approx(s));                     // prediction time
  CHECK(f[base + 8] == doctest::Approx(std::log1p(200.0)));     // log popularity
  double mean_t = 0.0;
  for (int i = 0; i < 200; ++i) mean_t += c.events[i].time;
  mean_t /= 200.0;
  CHECK(f[base + 9] == doctest::Approx(mean_t).epsilon(1e-12));
}

TEST_CASE("streaming state matches batch extraction") {
  FeatureConfig cfg;
  const Cascade c = sample_cascade();
  const double s = c.events.back().time + 10.0;
  ItemState state(cfg);
  for (const auto& e : c.events) state.observe(e.time, e.mark);
  const auto streaming = extract_features(c.static_attrs, state, s);
  const auto batch = extract_features(c, s, cfg);
  REQUIRE(streaming.size() == batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    CHECK(streaming[i] == doctest::Approx(batch[i]).epsilon(1e-12));
  }
}

TEST_CASE("events at or after s are excluded") {
  FeatureConfig cfg;
  Cascade c;
  c.events = {{1.0, 1.0}, {2.0, 1.0}, {5.0, 1.0}};
  const auto f = extract_features(c, 5.0, cfg);  // N counts [0, 5)
  CHECK(f[0] == doctest::Approx(2.0));
}

TEST_CASE("window counts reflect recent activity only") {
  FeatureConfig cfg;
  cfg.base_window = 100.0;
  Cascade c;
  // Burst at the start, then silence until s.
  for (int i = 0; i < 50; ++i) c.events.push_back({static_cast<double>(i), 1.0});
  const double s = 1e6;
  const auto f = extract_features(c, s, cfg);
  CHECK(f[0] == doctest::Approx(50.0));  // total count survives
  CHECK(f[1] == doctest::Approx(0.0));   // velocity over the base window is 0
  CHECK(f[4] == doctest::Approx(0.0));   // 1h window count is 0
}

TEST_CASE("quantile checkpoint features are sane") {
  FeatureConfig cfg;
  const Cascade c = sample_cascade();
  const double s = c.events.back().time + 1.0;
  const auto f = extract_features(c, s, cfg);
  const std::size_t base = c.static_attrs.size();
  const double t50 = f[base + 10];
  const double t90 = f[base + 11];
  const double t_exact_50 = c.events[199].time;  // 200th of 400 events
  const double t_exact_90 = c.events[359].time;
  CHECK(t50 > 0.0);
  CHECK(t90 >= t50);
  // Power-of-two checkpoints overshoot by at most a factor-2 event index.
  CHECK(t50 >= t_exact_50 * 0.999);
  CHECK(t90 >= t_exact_90 * 0.999);
  CHECK(t50 <= c.events.back().time);
  CHECK(t90 <= c.events.back().time);
}
