#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hawkescast/baselines.hpp"
#include "hawkescast/estimators.hpp"
#include "hawkescast/features.hpp"
#include "hawkescast/forecaster.hpp"
#include "hawkescast/io.hpp"
#include "hawkescast/metrics.hpp"
#include "hawkescast/moments.hpp"
#include "hawkescast/sim.hpp"

namespace py = pybind11;
using namespace hawkescast;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Self-excited point process popularity forecasting (C++ core)";

  m.attr("INF_HORIZON") = kInfiniteHorizon;

  py::class_<Event>(m, "Event")
      .def(py::init<>())
      .def(py::init([](double time, double mark) { return Event{time, mark}; }),
           py::arg("time"), py::arg("mark") = 1.0)
      .def_readwrite("time", &Event::time)
      .def_readwrite("mark", &Event::mark)
      .def("__repr__", [](const Event& e) {
        return "Event(time=" + std::to_string(e.time) + ", mark=" + std::to_string(e.mark) + ")";
      });

  py::class_<Cascade>(m, "Cascade")
      .def(py::init<>())
      .def_readwrite("item_id", &Cascade::item_id)
      .def_readwrite("created_at", &Cascade::created_at)
      .def_readwrite("events", &Cascade::events)
      .def_readwrite("static_attrs", &Cascade::static_attrs)
      .def_readwrite("truncated", &Cascade::truncated)
      .def("count_before", &Cascade::count_before, py::arg("t"))
      .def("validate", &Cascade::validate)
      .def("__len__", &Cascade::size);

  py::class_<HawkesExpParams>(m, "HawkesExpParams")
      .def(py::init<>())
      .def(py::init([](double beta, double rho1, double rho2, double lambda0) {
             return HawkesExpParams{beta, rho1, rho2, lambda0};
           }),
           py::arg("beta"), py::arg("rho1"), py::arg("rho2"), py::arg("lambda0"))
      .def_readwrite("beta", &HawkesExpParams::beta)
      .def_readwrite("rho1", &HawkesExpParams::rho1)
      .def_readwrite("rho2", &HawkesExpParams::rho2)
      .def_readwrite("lambda0", &HawkesExpParams::lambda0)
      .def("alpha", &HawkesExpParams::alpha)
      .def("sigma2_limit_ratio", &HawkesExpParams::Sigma2)
      .def("validate", &HawkesExpParams::validate);

  // Closed forms.
  m.def("intensity_at", &intensity_at, py::arg("cascade"), py::arg("params"), py::arg("t"));
  m.def("expected_count",
        static_cast<double (*)(double, double, double)>(&expected_count_exp), py::arg("lambda_s"),
        py::arg("alpha"), py::arg("delta"),
        "E[N(s+delta) - N(s) | F_s] for the exponential kernel.");
  m.def("conditional_variance", &conditional_variance_exp, py::arg("lambda_s"), py::arg("params"),
        py::arg("delta"));
  m.def("characteristic_time", &characteristic_time, py::arg("gamma"), py::arg("alpha"));

  // Estimators.
  m.def("alpha_mean",
        [](const Cascade& c, double off) { return alpha_mean(c, off); },
        py::arg("cascade"), py::arg("start_offset") = 0.0);
  m.def("alpha_quantile", &alpha_quantile, py::arg("cascade"), py::arg("gamma"),
        py::arg("raw_reciprocal") = false, py::arg("start_offset") = 0.0);

  // Simulation.
  py::enum_<MarkLaw>(m, "MarkLaw")
      .value("constant", MarkLaw::constant)
      .value("exponential", MarkLaw::exponential)
      .value("lognormal", MarkLaw::lognormal);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("exp_params", &SimConfig::exp_params)
      .def_readwrite("mark_law", &SimConfig::mark_law)
      .def_readwrite("t_max", &SimConfig::t_max)
      .def_readwrite("max_events", &SimConfig::max_events)
      .def_readwrite("seed", &SimConfig::seed);

  m.def("simulate", [](const SimConfig& cfg) { return simulate(cfg).cascade; }, py::arg("config"));

  py::class_<HeterogeneityConfig>(m, "HeterogeneityConfig")
      .def(py::init<>())
      .def_readwrite("log_beta_mean", &HeterogeneityConfig::log_beta_mean)
      .def_readwrite("log_beta_sigma", &HeterogeneityConfig::log_beta_sigma)
      .def_readwrite("rho1_min", &HeterogeneityConfig::rho1_min)
      .def_readwrite("rho1_max", &HeterogeneityConfig::rho1_max)
      .def_readwrite("log_lambda0_mean", &HeterogeneityConfig::log_lambda0_mean)
      .def_readwrite("log_lambda0_sigma", &HeterogeneityConfig::log_lambda0_sigma)
      .def_readwrite("attr_noise_sigma", &HeterogeneityConfig::attr_noise_sigma)
      .def_readwrite("mark_law", &HeterogeneityConfig::mark_law)
      .def_readwrite("t_max", &HeterogeneityConfig::t_max)
      .def_readwrite("max_events", &HeterogeneityConfig::max_events);

  m.def("simulate_batch", &simulate_batch, py::arg("seed"), py::arg("n_items"), py::arg("het"));

  // Features.
  py::class_<FeatureConfig>(m, "FeatureConfig")
      .def(py::init<>())
      .def_readwrite("base_window", &FeatureConfig::base_window)
      .def_readwrite("gamma_list", &FeatureConfig::gamma_list)
      .def("temporal_dim", &FeatureConfig::temporal_dim);

  m.def("extract_features",
        [](const Cascade& c, double s, const FeatureConfig& cfg) {
          return extract_features(c, s, cfg);
        },
        py::arg("cascade"), py::arg("s"), py::arg("config") = FeatureConfig{});

  // Forecasting.
  py::enum_<Aggregation>(m, "Aggregation")
      .value("single", Aggregation::single)
      .value("arithmetic", Aggregation::arithmetic)
      .value("geometric", Aggregation::geometric);

  py::class_<SamplingPolicy>(m, "SamplingPolicy")
      .def(py::init<>())
      .def_readwrite("s_min", &SamplingPolicy::s_min)
      .def_readwrite("s_max", &SamplingPolicy::s_max)
      .def_readwrite("samples_per_item", &SamplingPolicy::samples_per_item);

  py::class_<ForecastConfig>(m, "ForecastConfig")
      .def(py::init<>())
      .def_readwrite("ref_horizons", &ForecastConfig::ref_horizons)
      .def_readwrite("aggregation", &ForecastConfig::aggregation)
      .def_readwrite("log_offset", &ForecastConfig::log_offset)
      .def_readwrite("features", &ForecastConfig::features);

  py::class_<ForecastModel>(m, "ForecastModel")
      .def_static("train",
                  [](const std::vector<Cascade>& dataset, const ForecastConfig& cfg,
                     const SamplingPolicy& policy, double t_cover) {
                    return ForecastModel::fit(build_training_set(dataset, policy, cfg, t_cover),
                                              cfg);
                  },
                  py::arg("dataset"), py::arg("config") = ForecastConfig{},
                  py::arg("policy") = SamplingPolicy{}, py::arg("t_cover") = 14 * 86400.0)
      .def("predict",
           [](const ForecastModel& m_, const std::vector<double>& f, double n_s, double delta) {
             return m_.predict(f, n_s, delta);
           },
           py::arg("features"), py::arg("n_s"), py::arg("delta"))
      .def("predict_alpha",
           [](const ForecastModel& m_, const std::vector<double>& f) { return m_.predict_alpha(f); },
           py::arg("features"))
      .def("save", &ForecastModel::save, py::arg("path"))
      .def_static("load", &ForecastModel::load, py::arg("path"));

  // Metrics.
  m.def("mape",
        [](const std::vector<double>& p, const std::vector<double>& t) { return mape(p, t).value; },
        py::arg("predictions"), py::arg("truths"),
        "Median absolute percentage error (nonpositive truths excluded).");
  m.def("kendall_tau_b", &kendall_tau_b, py::arg("predictions"), py::arg("truths"));
  m.def("rmse", &rmse, py::arg("predictions"), py::arg("truths"));

  // IO.
  m.def("load_dataset", &load_dataset, py::arg("path"));
  m.def("save_dataset", &save_dataset, py::arg("dataset"), py::arg("path"));
  m.def("parse_duration", &parse_duration, py::arg("text"));
}
