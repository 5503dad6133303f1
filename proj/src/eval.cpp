#include "hawkescast/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hawkescast/io.hpp"
#include "hawkescast/metrics.hpp"
#include "hawkescast/rng.hpp"

namespace hawkescast {

namespace {

std::string fingerprint(const EvalConfig& cfg) {
  nlohmann::json j;
  j["horizons"] = cfg.horizons;
  j["prediction_times"] = cfg.prediction_times;
  j["popularity_split"] = cfg.popularity_split;
  j["early_late_split"] = cfg.early_late_split;
  j["t_cover"] = cfg.t_cover;
  j["seed"] = cfg.seed;
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(j.dump());
  return os.str();
}

}  // namespace

const EvalCell* EvalReport::find(const std::string& model, double horizon,
                                 const std::string& split) const {
  for (const auto& c : cells) {
    const bool same_h = (is_infinite_horizon(horizon) && is_infinite_horizon(c.horizon)) ||
                        c.horizon == horizon;
    if (c.model == model && same_h && c.split == split) return &c;
  }
  return nullptr;
}

EvalReport run_experiment(const std::vector<Cascade>& test_set,
                          const std::vector<PredictorHandle>& models, const EvalConfig& config) {
  EvalReport report;
  report.seed = config.seed;
  report.config_fingerprint = fingerprint(config);

  const std::vector<std::string> split_names = {"overall", "low", "high", "early", "late"};

  for (const auto& model : models) {
    for (double horizon : config.horizons) {
      // predictions/truths per split
      std::vector<std::vector<double>> preds(split_names.size()), truths(split_names.size());
      bool any_supported = false;
      for (const auto& cascade : test_set) {
        const double final_count = static_cast<double>(cascade.events.size());
        for (double s : config.prediction_times) {
          double truth;
          if (is_infinite_horizon(horizon)) {
            if (cascade.truncated) continue;  // no infinite-horizon label
            truth = final_count;
          } else {
            if (s + horizon > config.t_cover) continue;
            truth = static_cast<double>(cascade.count_before(s + horizon));
          }
          const auto pred = model.predict(cascade, s, horizon);
          if (!pred.has_value()) continue;
          any_supported = true;
          for (std::size_t k = 0; k < split_names.size(); ++k) {
            const auto& split = split_names[k];
            if (split == "low" && final_count >= config.popularity_split) continue;
            if (split == "high" && final_count < config.popularity_split) continue;
            if (split == "early" && s >= config.early_late_split) continue;
            if (split == "late" && s < config.early_late_split) continue;
            preds[k].push_back(*pred);
            truths[k].push_back(truth);
          }
        }
      }
      for (std::size_t k = 0; k < split_names.size(); ++k) {
        EvalCell cell;
        cell.model = model.name;
        cell.split = split_names[k];
        cell.horizon = horizon;
        if (!any_supported || preds[k].size() < 2) {
          cell.supported = false;
          report.cells.push_back(cell);
          continue;
        }
        const auto m = mape(preds[k], truths[k]);
        cell.mape = m.value;
        cell.n_examples = m.n_used;
        cell.n_excluded = m.n_excluded;
        cell.tau = kendall_tau_b(preds[k], truths[k]);
        cell.rmse = rmse(preds[k], truths[k]);
        report.cells.push_back(cell);
      }
    }
  }
  return report;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j;
  j["config_fingerprint"] = config_fingerprint;
  j["seed"] = seed;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) {
    j["cells"].push_back({{"model", c.model},
                          {"split", c.split},
                          {"horizon", is_infinite_horizon(c.horizon) ? -1.0 : c.horizon},
                          {"supported", c.supported},
                          {"mape", c.mape},
                          {"tau", c.tau},
                          {"rmse", c.rmse},
                          {"n_examples", c.n_examples},
                          {"n_excluded", c.n_excluded}});
  }
  return j;
}

std::string EvalReport::to_table() const {
  std::ostringstream os;
  os << "model            horizon   split     MAPE     tau      RMSE        n\n";
  for (const auto& c : cells) {
    char line[160];
    if (!c.supported) {
      std::snprintf(line, sizeof(line), "%-16s %-9s %-8s  (unsupported)\n", c.model.c_str(),
                    format_duration(c.horizon).c_str(), c.split.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-16s %-9s %-8s %7.4f %7.4f %11.4g %8zu\n",
                    c.model.c_str(), format_duration(c.horizon).c_str(), c.split.c_str(), c.mape,
                    c.tau, c.rmse, c.n_examples);
    }
    os << line;
  }
  return os.str();
}

Cascade make_bench_cascade(std::size_t size, double s, std::uint64_t seed) {
  CounterRng rng(seed);
  Cascade out;
  out.item_id = "bench-" + std::to_string(size);
  out.events.reserve(size);
  std::vector<double> times(size);
  for (auto& t : times) t = s * 0.999 * rng.uniform();
  std::sort(times.begin(), times.end());
  for (double t : times) out.events.push_back({t, 1.0});
  out.static_attrs = {0.0, 0.3, 1.0, 0.0, 0.0};
  return out;
}

std::vector<BenchRow> bench_prediction_cost(const std::vector<BenchTarget>& targets,
                                            const std::vector<std::size_t>& sizes, double s,
                                            std::size_t min_reps, double min_total_ms) {
  std::vector<BenchRow> rows;
  volatile double sink = 0.0;
  for (const auto& target : targets) {
    for (std::size_t size : sizes) {
      const Cascade cascade = make_bench_cascade(size, s, 0x9e3779b9 ^ size);
      // Warmup.
      for (int i = 0; i < 2; ++i) sink = sink + target.op(cascade, s);
      std::vector<double> samples;
      double total_ms = 0.0;
      while (samples.size() < min_reps || total_ms < min_total_ms) {
        const auto t0 = std::chrono::steady_clock::now();
        sink = sink + target.op(cascade, s);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        samples.push_back(ms);
        total_ms += ms;
        if (samples.size() > 10000) break;
      }
      std::sort(samples.begin(), samples.end());
      BenchRow row;
      row.model = target.name;
      row.cascade_size = size;
      row.reps = samples.size();
      row.median_ms = samples[samples.size() / 2];
      row.mean_ms = total_ms / static_cast<double>(samples.size());
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "model            size       mean_ms     median_ms   reps\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %-10zu %-11.5f %-11.5f %zu\n", r.model.c_str(),
                  r.cascade_size, r.mean_ms, r.median_ms, r.reps);
    os << line;
  }
  return os.str();
}

}  // namespace hawkescast
