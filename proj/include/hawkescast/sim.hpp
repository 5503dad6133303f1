#pragma once

#include <cstdint>
#include <vector>

#include "hawkescast/rng.hpp"
#include "hawkescast/types.hpp"

namespace hawkescast {

enum class KernelKind { exponential, power_law };
enum class MarkLaw { constant, exponential, lognormal };

struct SimConfig {
  KernelKind kernel = KernelKind::exponential;
  HawkesExpParams exp_params;        // used when kernel == exponential
  PowerLawKernelParams pl_params;    // used when kernel == power_law
  double pl_lambda0 = 1.0;           // initial intensity for the power-law case
  double pl_mark_value = 1.0;        // constant mark (node degree) for the power-law case
  MarkLaw mark_law = MarkLaw::constant;
  double t_max = 1e9;
  std::size_t max_events = 1'000'000;
  std::uint64_t seed = 0;
  bool track_generations = false;  // exponential kernel only

  void validate() const;
  /// Branching ratio mu of the configured process.
  double branching_ratio() const;
};

struct SimResult {
  Cascade cascade;
  /// Generation of each event (0 = triggered by the baseline); present only
  /// when track_generations was set.
  std::vector<int> generations;
};

/// Draws one mark scale Z with moments (rho1, rho2) under the given law.
double draw_mark_scale(CounterRng& rng, MarkLaw law, double rho1, double rho2);

/// Exact simulation of the configured self-excited process, deterministic
/// given the seed. Exponential kernel: inverse-CDF inter-event sampling
/// (the intensity only decays between events, so the envelope is exact).
/// Power-law kernel: Ogata thinning with the current intensity as majorant.
SimResult simulate(const SimConfig& config);

struct HeterogeneityConfig {
  // Per-item parameter laws: beta and lambda0 lognormal, rho1 uniform.
  double log_beta_mean = 0.0;
  double log_beta_sigma = 0.5;
  double rho1_min = 0.0;
  double rho1_max = 0.7;
  double log_lambda0_mean = 0.0;
  double log_lambda0_sigma = 1.0;
  /// Gaussian noise added to each static attribute; with zero noise the
  /// attributes determine alpha exactly.
  double attr_noise_sigma = 0.0;
  MarkLaw mark_law = MarkLaw::exponential;
  double t_max = 1e9;
  std::size_t max_events = 1'000'000;
};

/// Simulates n_items exponential-kernel cascades with per-item parameters
/// drawn from `het`; static_attrs = [log beta, rho1, log lambda0] + noise.
/// Each item uses the child stream split(seed, item index).
std::vector<Cascade> simulate_batch(std::uint64_t seed, std::size_t n_items,
                                    const HeterogeneityConfig& het);

/// True per-item parameters for a batch item (same draws as simulate_batch).
HawkesExpParams batch_item_params(std::uint64_t seed, std::size_t item_index,
                                  const HeterogeneityConfig& het);

}  // namespace hawkescast
