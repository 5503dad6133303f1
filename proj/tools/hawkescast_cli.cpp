// Command-line front end: simulate / train / predict / evaluate / bench.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hawkescast/baselines.hpp"
#include "hawkescast/eval.hpp"
#include "hawkescast/forecaster.hpp"
#include "hawkescast/io.hpp"
#include "hawkescast/sim.hpp"

namespace hc = hawkescast;

namespace {

// Minimal TOML-style reader: `key = value` lines plus [section] headers,
// flattened to "section.key". Strings may be quoted; comments start with #.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::map<std::string, std::string> out;
  std::string line, section;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    out[section.empty() ? key : section + "." + key] = value;
  }
  return out;
}

double get_num(const std::map<std::string, std::string>& cfg, const std::string& key,
               double fallback) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  return hc::parse_duration(it->second);  // accepts plain numbers and h/d/s literals
}

std::string get_str(const std::map<std::string, std::string>& cfg, const std::string& key,
                    const std::string& fallback) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

hc::MarkLaw parse_mark_law(const std::string& name) {
  if (name == "constant") return hc::MarkLaw::constant;
  if (name == "exponential") return hc::MarkLaw::exponential;
  if (name == "lognormal") return hc::MarkLaw::lognormal;
  throw std::invalid_argument("unknown mark law: " + name);
}

std::vector<double> parse_horizon_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(hc::parse_duration(item));
  }
  if (out.empty()) throw std::invalid_argument("empty horizon list");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::uint64_t seed) {
  const auto cfg = read_config(config_path);
  // Scalar keys may live at the top level or inside a [simulate] section.
  auto num = [&](const std::string& key, double fallback) {
    return get_num(cfg, key, get_num(cfg, "simulate." + key, fallback));
  };
  const auto n_items = static_cast<std::size_t>(num("n_items", 5000));

  hc::HeterogeneityConfig het;
  het.log_beta_mean = get_num(cfg, "heterogeneity.log_beta_mean", std::log(1.0 / 3600.0));
  het.log_beta_sigma = get_num(cfg, "heterogeneity.log_beta_sigma", 0.5);
  het.rho1_min = get_num(cfg, "heterogeneity.rho1_min", 0.1);
  het.rho1_max = get_num(cfg, "heterogeneity.rho1_max", 0.7);
  het.log_lambda0_mean = get_num(cfg, "heterogeneity.log_lambda0_mean", std::log(20.0 / 3600.0));
  het.log_lambda0_sigma = get_num(cfg, "heterogeneity.log_lambda0_sigma", 0.8);
  het.attr_noise_sigma = get_num(cfg, "heterogeneity.attr_noise_sigma", 0.25);
  het.mark_law = parse_mark_law(
      get_str(cfg, "mark_law", get_str(cfg, "heterogeneity.mark_law", "exponential")));
  het.t_max = num("t_max", get_num(cfg, "heterogeneity.t_max", 14 * 86400.0));
  het.max_events =
      static_cast<std::size_t>(num("max_events", get_num(cfg, "heterogeneity.max_events", 200000)));

  const auto dataset = hc::simulate_batch(seed, n_items, het);
  hc::save_dataset(dataset, out_path);
  std::size_t total = 0;
  for (const auto& c : dataset) total += c.events.size();
  std::cout << "wrote " << dataset.size() << " cascades (" << total << " events) to " << out_path
            << "\n";
  return 0;
}

hc::ForecastConfig make_forecast_config(const std::string& horizons,
                                        const std::string& aggregation,
                                        const std::string& alpha_estimator) {
  hc::ForecastConfig cfg;
  cfg.ref_horizons = parse_horizon_list(horizons);
  if (aggregation == "single")
    cfg.aggregation = hc::Aggregation::single;
  else if (aggregation == "arithmetic")
    cfg.aggregation = hc::Aggregation::arithmetic;
  else if (aggregation == "geometric")
    cfg.aggregation = hc::Aggregation::geometric;
  else
    throw std::invalid_argument("unknown aggregation: " + aggregation);
  if (cfg.ref_horizons.size() == 1) cfg.aggregation = hc::Aggregation::single;
  if (alpha_estimator == "mean")
    cfg.alpha_estimator = hc::AlphaEstimatorKind::mean;
  else if (alpha_estimator == "quantile")
    cfg.alpha_estimator = hc::AlphaEstimatorKind::quantile;
  else
    throw std::invalid_argument("unknown alpha estimator: " + alpha_estimator);
  return cfg;
}

int cmd_train(const std::string& data_path, const std::string& model_out,
              const std::string& horizons, const std::string& aggregation,
              const std::string& alpha_estimator, double t_cover) {
  const auto dataset = hc::load_dataset(data_path);
  const auto cfg = make_forecast_config(horizons, aggregation, alpha_estimator);
  hc::SamplingPolicy policy;
  const auto training = hc::build_training_set(dataset, policy, cfg, t_cover);
  if (training.samples.empty()) throw std::runtime_error("no usable training examples");
  const auto model = hc::ForecastModel::fit(training, cfg);
  model.save(model_out);
  std::cout << "trained on " << training.samples.size() << " examples ("
            << training.dropped_truncated << " dropped for coverage); model written to "
            << model_out << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path, double at,
                double horizon, const std::string& format) {
  const auto model = hc::ForecastModel::load(model_path);
  const auto dataset = hc::load_dataset(data_path);
  if (format == "table") {
    std::cout << "item_id           N(s)      prediction\n";
  }
  for (const auto& c : dataset) {
    const auto f = hc::extract_features(c, at, model.config().features);
    const auto n_s = static_cast<double>(c.count_before(at));
    const double value = model.predict(f, n_s, horizon);
    if (format == "records") {
      nlohmann::json j = {{"item_id", c.item_id},
                          {"s", at},
                          {"horizon", hc::format_duration(horizon)},
                          {"n_s", n_s},
                          {"prediction", value}};
      std::cout << j.dump() << "\n";
    } else {
      char line[160];
      std::snprintf(line, sizeof(line), "%-17s %-9.0f %.2f\n", c.item_id.c_str(), n_s, value);
      std::cout << line;
    }
  }
  return 0;
}

struct TrainedModels {
  std::optional<hc::ForecastModel> hwk;
  std::optional<hc::PbModels> pb;
  std::optional<hc::HfModel> hf;
};

int cmd_evaluate(const std::string& data_path, const std::string& models_arg,
                 const std::string& horizons_arg, const std::string& report_dir,
                 std::uint64_t seed) {
  const auto dataset = hc::load_dataset(data_path);
  if (dataset.size() < 4) throw std::runtime_error("dataset too small to split");
  const auto names = parse_name_list(models_arg);

  hc::EvalConfig eval_cfg;
  eval_cfg.seed = seed;
  if (!horizons_arg.empty()) {
    eval_cfg.horizons = parse_horizon_list(horizons_arg);
    eval_cfg.horizons.push_back(hc::kInfiniteHorizon);
  }
  std::vector<double> finite;
  for (double h : eval_cfg.horizons) {
    if (!hc::is_infinite_horizon(h)) finite.push_back(h);
  }

  // Deterministic even/odd split.
  std::vector<hc::Cascade> train_set, test_set;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (i % 2 == 0 ? train_set : test_set).push_back(dataset[i]);
  }

  hc::SamplingPolicy policy;
  TrainedModels trained;
  std::vector<hc::PredictorHandle> handles;
  for (const auto& name : names) {
    if (name == "hwk") {
      const auto cfg = make_forecast_config("6h,1d,4d", "geometric", "mean");
      const auto set = hc::build_training_set(train_set, policy, cfg, eval_cfg.t_cover);
      trained.hwk = hc::ForecastModel::fit(set, cfg);
      handles.push_back({"hwk", [&trained](const hc::Cascade& c, double s, double delta) {
                           const auto f = hc::extract_features(c, s, trained.hwk->config().features);
                           return std::optional<double>(trained.hwk->predict(
                               f, static_cast<double>(c.count_before(s)), delta));
                         }});
    } else if (name == "pb") {
      hc::ForecastConfig cfg;
      trained.pb = hc::PbModels::train(train_set, finite, policy, cfg, eval_cfg.t_cover);
      handles.push_back({"pb", [&trained](const hc::Cascade& c, double s, double delta) {
                           const auto f =
                               hc::extract_features(c, s, trained.pb->config().features);
                           return trained.pb->predict(
                               f, static_cast<double>(c.count_before(s)), delta);
                         }});
    } else if (name == "hf") {
      hc::ForecastConfig cfg;
      trained.hf = hc::HfModel::train(train_set, finite, policy, cfg, eval_cfg.t_cover);
      handles.push_back({"hf", [&trained](const hc::Cascade& c, double s, double delta) {
                           if (hc::is_infinite_horizon(delta)) return std::optional<double>();
                           const auto f = hc::extract_features(c, s);
                           return std::optional<double>(trained.hf->predict(
                               f, static_cast<double>(c.count_before(s)), delta));
                         }});
    } else if (name == "rpp") {
      handles.push_back({"rpp", [](const hc::Cascade& c, double s, double delta) {
                           if (c.count_before(s) < 2) return std::optional<double>();
                           const auto fit = hc::rpp_fit(c, s);
                           const double t = hc::is_infinite_horizon(delta) ? hc::kInfiniteHorizon
                                                                           : s + delta;
                           return std::optional<double>(hc::rpp_predict(
                               fit.params, static_cast<double>(c.count_before(s)), s, t));
                         }});
    } else if (name == "seismic") {
      handles.push_back({"seismic", [](const hc::Cascade& c, double s, double delta) {
                           if (!hc::is_infinite_horizon(delta)) return std::optional<double>();
                           if (c.count_before(s) == 0) return std::optional<double>();
                           hc::SeismicConfig cfg;
                           cfg.kernel = {1.0, 300.0, 0.5, 1.0};
                           const double p = hc::seismic_estimate_p(c, s, cfg);
                           return std::optional<double>(hc::seismic_predict(c, s, p, cfg).value);
                         }});
    } else {
      throw std::invalid_argument("unknown model: " + name);
    }
  }

  const auto report = hc::run_experiment(test_set, handles, eval_cfg);
  std::filesystem::create_directories(report_dir);
  {
    std::ofstream out(report_dir + "/report.json");
    auto j = report.to_json();
    j["data"] = data_path;
    j["models"] = names;
    out << j.dump(2) << "\n";
  }
  {
    std::ofstream out(report_dir + "/report.txt");
    out << report.to_table();
  }
  std::cout << report.to_table();
  std::cout << "report written to " << report_dir << "\n";
  return 0;
}

int cmd_bench(const std::string& models_arg, const std::string& sizes_arg,
              const std::string& report_dir, std::uint64_t seed) {
  std::vector<std::size_t> sizes;
  for (const auto& tok : parse_name_list(sizes_arg)) {
    sizes.push_back(static_cast<std::size_t>(std::stod(tok)));
  }
  if (sizes.empty()) throw std::invalid_argument("empty size list");

  // A small trained model so the hwk target measures the real path.
  hc::HeterogeneityConfig het;
  het.t_max = 4 * 86400.0;
  het.max_events = 20000;
  const auto train_set = hc::simulate_batch(seed, 80, het);
  const auto cfg = make_forecast_config("1d", "single", "mean");
  hc::SamplingPolicy policy;
  policy.s_max = 2 * 86400.0;
  const auto model =
      hc::ForecastModel::fit(hc::build_training_set(train_set, policy, cfg, 4 * 86400.0), cfg);

  std::vector<hc::BenchTarget> targets;
  for (const auto& name : parse_name_list(models_arg)) {
    if (name == "hwk") {
      targets.push_back({"hwk", [&model](const hc::Cascade& c, double s) {
                           hc::ItemState state(model.config().features);
                           for (const auto& e : c.events) {
                             if (e.time >= s) break;
                             state.observe(e.time, e.mark);
                           }
                           const auto f = hc::extract_features(c.static_attrs, state, s);
                           return model.predict(f, static_cast<double>(state.count()),
                                                hc::kInfiniteHorizon);
                         }});
    } else if (name == "seismic") {
      targets.push_back({"seismic", [](const hc::Cascade& c, double s) {
                           hc::SeismicConfig scfg;
                           scfg.kernel = {1.0, 300.0, 0.5, 1.0};
                           const double p = hc::seismic_estimate_p(c, s, scfg);
                           return hc::seismic_predict(c, s, p, scfg).value;
                         }});
    } else if (name == "rpp") {
      targets.push_back({"rpp", [](const hc::Cascade& c, double s) {
                           return hc::rpp_fit(c, s).params.p;
                         }});
    } else {
      throw std::invalid_argument("unknown model: " + name);
    }
  }

  // RPP fits are far too slow for 10^5+ events; cap its grid.
  std::vector<hc::BenchRow> rows;
  for (const auto& target : targets) {
    std::vector<std::size_t> grid = sizes;
    if (target.name == "rpp") {
      std::erase_if(grid, [](std::size_t n) { return n > 100000; });
    }
    const auto part = hc::bench_prediction_cost({target}, grid, 2 * 86400.0);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  const std::string table = hc::bench_table(rows);
  std::cout << table;
  if (!report_dir.empty()) {
    std::filesystem::create_directories(report_dir);
    std::ofstream out(report_dir + "/bench.txt");
    out << table;
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"model", r.model},
                   {"size", r.cascade_size},
                   {"mean_ms", r.mean_ms},
                   {"median_ms", r.median_ms},
                   {"reps", r.reps}});
    }
    std::ofstream jout(report_dir + "/bench.json");
    jout << j.dump(2) << "\n";
    std::cout << "report written to " << report_dir << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-exciting cascade popularity forecasting"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--seed", seed, "Seed for all randomness");
  app.add_option("--threads", threads, "Worker cap (currently single-threaded)");

  auto* sim = app.add_subcommand("simulate", "Generate a synthetic cascade dataset");
  std::string sim_config, sim_out;
  sim->add_option("--config", sim_config, "Simulation config (TOML)")->required();
  sim->add_option("--out", sim_out, "Output dataset path (.cascades or .cascades.gz)")->required();

  auto* train = app.add_subcommand("train", "Train a forecast model");
  std::string train_data, train_out, train_horizons = "1d";
  std::string train_agg = "geometric", train_alpha = "mean", train_cover = "14d";
  train->add_option("--data", train_data, "Training dataset")->required();
  train->add_option("--model-out", train_out, "Model output path")->required();
  train->add_option("--horizons", train_horizons, "Reference horizons, e.g. 6h,1d,4d");
  train->add_option("--aggregation", train_agg, "single | arithmetic | geometric");
  train->add_option("--alpha-estimator", train_alpha, "mean | quantile");
  train->add_option("--t-cover", train_cover, "Observation end of the dataset");

  auto* predict = app.add_subcommand("predict", "Predict future counts");
  std::string pred_model, pred_data, pred_at, pred_horizon, pred_format = "table";
  predict->add_option("--model", pred_model, "Trained model path")->required();
  predict->add_option("--data", pred_data, "Dataset to predict on")->required();
  predict->add_option("--at", pred_at, "Prediction time s (duration literal)")->required();
  predict->add_option("--horizon", pred_horizon, "Horizon (duration literal or inf)")->required();
  predict->add_option("--format", pred_format, "table | records");

  auto* evaluate = app.add_subcommand("evaluate", "Train/test split evaluation");
  std::string eval_data, eval_models = "hwk,pb,hf", eval_horizons, eval_report = "report";
  evaluate->add_option("--data", eval_data, "Dataset")->required();
  evaluate->add_option("--models", eval_models, "Comma list: hwk,pb,hf,rpp,seismic");
  evaluate->add_option("--horizons", eval_horizons, "Horizon grid (default 1h..7d plus inf)");
  evaluate->add_option("--report", eval_report, "Report directory");

  auto* bench = app.add_subcommand("bench", "Prediction-cost microbenchmark");
  std::string bench_models = "hwk,seismic,rpp", bench_sizes = "1e2,1e3,1e4,1e5,1e6";
  std::string bench_report = "report";
  bench->add_option("--models", bench_models, "Comma list: hwk,seismic,rpp");
  bench->add_option("--sizes", bench_sizes, "Cascade sizes, e.g. 1e2,1e3,1e4");
  bench->add_option("--report", bench_report, "Report directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_config, sim_out, seed);
    if (train->parsed())
      return cmd_train(train_data, train_out, train_horizons, train_agg, train_alpha,
                       hc::parse_duration(train_cover));
    if (predict->parsed())
      return cmd_predict(pred_model, pred_data, hc::parse_duration(pred_at),
                         hc::parse_duration(pred_horizon), pred_format);
    if (evaluate->parsed()) return cmd_evaluate(eval_data, eval_models, eval_horizons, eval_report, seed);
    if (bench->parsed()) return cmd_bench(bench_models, bench_sizes, bench_report, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error invalid-argument: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error domain: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error runtime: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
