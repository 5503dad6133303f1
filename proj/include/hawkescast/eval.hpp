#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hawkescast/types.hpp"

namespace hawkescast {

/// A model under evaluation: returns predicted N(s + delta), or nullopt when
/// the (s, delta) query is unsupported (e.g. PB at an untrained horizon).
struct PredictorHandle {
  std::string name;
  std::function<std::optional<double>(const Cascade&, double s, double delta)> predict;
};

struct EvalCell {
  std::string model;
  std::string split;   // overall | low | high | early | late
  double horizon = 0;  // seconds; kInfiniteHorizon allowed
  bool supported = true;
  double mape = 0.0;
  double tau = 0.0;
  double rmse = 0.0;
  std::size_t n_examples = 0;
  std::size_t n_excluded = 0;
};

struct EvalConfig {
  std::vector<double> horizons = {3600,          3 * 3600.0,  6 * 3600.0, 12 * 3600.0,
                                  86400.0,       2 * 86400.0, 4 * 86400.0, 7 * 86400.0,
                                  kInfiniteHorizon};
  std::vector<double> prediction_times = {6 * 3600.0, 24 * 3600.0, 48 * 3600.0};
  double popularity_split = 1000.0;   // final-size threshold for low/high
  double early_late_split = 86400.0;  // prediction-time threshold
  double t_cover = 14 * 86400.0;      // observation end of the dataset
  std::uint64_t seed = 0;
};

struct EvalReport {
  std::vector<EvalCell> cells;
  std::string config_fingerprint;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  std::string to_table() const;
  const EvalCell* find(const std::string& model, double horizon,
                       const std::string& split = "overall") const;
};

/// Runs every model over the horizon grid and splits; truth at finite delta
/// is N(s + delta), at infinity the final observed count (truncated cascades
/// are excluded from infinite-horizon labels).
EvalReport run_experiment(const std::vector<Cascade>& test_set,
                          const std::vector<PredictorHandle>& models, const EvalConfig& config);

// ---------------------------------------------------------------------------
// Prediction-cost microbenchmark.

/// A timed operation on a prepared cascade; the return value is accumulated
/// to keep the call from being optimized away.
struct BenchTarget {
  std::string name;
  std::function<double(const Cascade&, double s)> op;
};

struct BenchRow {
  std::string model;
  std::size_t cascade_size = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  std::size_t reps = 0;
};

/// Deterministic cascade with `size` events spread over [0, s) (geometric
/// early burst followed by a uniform tail), used as benchmark input.
Cascade make_bench_cascade(std::size_t size, double s, std::uint64_t seed);

std::vector<BenchRow> bench_prediction_cost(const std::vector<BenchTarget>& targets,
                                            const std::vector<std::size_t>& sizes, double s,
                                            std::size_t min_reps = 5, double min_total_ms = 50.0);

std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace hawkescast
