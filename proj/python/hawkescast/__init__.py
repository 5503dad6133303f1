"""Popularity forecasting over arbitrary time horizons.

Thin python surface over the C++ core: simulation, closed-form moments,
growth-exponent estimators, feature extraction, the trained forecaster,
metrics and dataset IO.
"""

from hawkescast._core import (
    INF_HORIZON,
    Aggregation,
    Cascade,
    Event,
    FeatureConfig,
    ForecastConfig,
    ForecastModel,
    HawkesExpParams,
    HeterogeneityConfig,
    MarkLaw,
    SamplingPolicy,
    SimConfig,
    alpha_mean,
    alpha_quantile,
    characteristic_time,
    conditional_variance,
    expected_count,
    extract_features,
    intensity_at,
    kendall_tau_b,
    load_dataset,
    mape,
    parse_duration,
    rmse,
    save_dataset,
    simulate,
    simulate_batch,
)

__all__ = [
    "INF_HORIZON",
    "Aggregation",
    "Cascade",
    "Event",
    "FeatureConfig",
    "ForecastConfig",
    "ForecastModel",
    "HawkesExpParams",
    "HeterogeneityConfig",
    "MarkLaw",
    "SamplingPolicy",
    "SimConfig",
    "alpha_mean",
    "alpha_quantile",
    "characteristic_time",
    "conditional_variance",
    "expected_count",
    "extract_features",
    "intensity_at",
    "kendall_tau_b",
    "load_dataset",
    "mape",
    "parse_duration",
    "rmse",
    "save_dataset",
    "simulate",
    "simulate_batch",
]
