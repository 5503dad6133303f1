#include "hawkescast/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkescast/kernels.hpp"

namespace hawkescast {

void SimConfig::validate() const {
  if (!(t_max > 0.0)) throw std::invalid_argument("SimConfig: t_max must be > 0");
  if (max_events < 1) throw std::invalid_argument("SimConfig: max_events must be >= 1");
  if (kernel == KernelKind::exponential) {
    exp_params.validate();
  } else {
    pl_params.validate();
    if (!(pl_lambda0 >= 0.0)) throw std::invalid_argument("SimConfig: pl_lambda0 must be >= 0");
    if (track_generations)
      throw std::invalid_argument("SimConfig: generation tracking supports the exponential kernel only");
  }
  if (!(branching_ratio() < 1.0))
    throw std::invalid_argument("SimConfig: branching ratio must be < 1");
}

double SimConfig::branching_ratio() const {
  if (kernel == KernelKind::exponential) return exp_params.rho1;
  return pl_mark_value * pl_params.p * kernel_power_law_total_mass(pl_params);
}

double draw_mark_scale(CounterRng& rng, MarkLaw law, double rho1, double rho2) {
  switch (law) {
    case MarkLaw::constant:
      return rho1;
    case MarkLaw::exponential:
      return rng.exponential(1.0 / std::max(rho1, 1e-300));
    case MarkLaw::lognormal: {
      // Parameterized to hit the first two moments exactly.
      const double s2 = std::log(std::max(rho2, rho1 * rho1 * (1.0 + 1e-12)) / (rho1 * rho1));
      const double m = std::log(rho1) - 0.5 * s2;
      return std::exp(m + std::sqrt(s2) * rng.normal());
    }
  }
  throw std::logic_error("draw_mark_scale: unknown mark law");
}

namespace {

SimResult simulate_exp_thinning(const SimConfig& cfg) {
  const auto& p = cfg.exp_params;
  CounterRng rng(cfg.seed);
  SimResult out;
  double t = 0.0;
  double lam = p.lambda0;  // intensity just after the last event (at time t)
  while (out.cascade.events.size() < cfg.max_events) {
    if (lam <= 0.0) break;
    const double e = rng.exponential();
    // Remaining mass of the decaying intensity is lam/beta; if the unit
    // exponential clock exceeds it there is no further event, ever.
    if (e >= lam / p.beta) break;
    const double dt = -std::log1p(-p.beta * e / lam) / p.beta;
    t += dt;
    if (t > cfg.t_max) break;
    const double z = draw_mark_scale(rng, cfg.mark_law, p.rho1, p.rho2);
    const double y = p.beta * z;
    lam = lam * std::exp(-p.beta * dt) + y;
    out.cascade.events.push_back({t, y});
  }
  out.cascade.truncated = out.cascade.events.size() >= cfg.max_events;
  return out;
}

SimResult simulate_exp_branching(const SimConfig& cfg) {
  const auto& p = cfg.exp_params;
  CounterRng rng(cfg.seed);
  struct Node {
    double time;
    double mark;
    int generation;
  };
  std::vector<Node> nodes;
  bool capped = false;

  auto poisson = [&rng](double mean) {
    // Inversion by sequential search; means here are O(1).
    if (mean <= 0.0) return std::size_t{0};
    const double limit = std::exp(-mean);
    double prod = rng.uniform_pos();
    std::size_t k = 0;
    while (prod > limit) {
      prod *= rng.uniform_pos();
      ++k;
    }
    return k;
  };

  // Generation 0: points of the baseline lambda(0) e^{-beta t}.
  const std::size_t n0 = poisson(p.lambda0 / p.beta);
  for (std::size_t i = 0; i < n0 && !capped; ++i) {
    const double t = rng.exponential(p.beta);
    const double z = draw_mark_scale(rng, cfg.mark_law, p.rho1, p.rho2);
    if (t <= cfg.t_max) nodes.push_back({t, p.beta * z, 0});
    if (nodes.size() >= cfg.max_events) capped = true;
  }
  // Offspring: event with mark Y = beta Z triggers Poisson(Z) children with
  // delays Exp(beta).
  for (std::size_t i = 0; i < nodes.size() && !capped; ++i) {
    const std::size_t n_children = poisson(nodes[i].mark / p.beta);
    for (std::size_t c = 0; c < n_children; ++c) {
      const double t = nodes[i].time + rng.exponential(p.beta);
      const double z = draw_mark_scale(rng, cfg.mark_law, p.rho1, p.rho2);
      if (t <= cfg.t_max) nodes.push_back({t, p.beta * z, nodes[i].generation + 1});
      if (nodes.size() >= cfg.max_events) {
        capped = true;
        break;
      }
    }
  }

  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const Node& a, const Node& b) { return a.time < b.time; });
  SimResult out;
  out.cascade.events.reserve(nodes.size());
  out.generations.reserve(nodes.size());
  for (const auto& n : nodes) {
    out.cascade.events.push_back({n.time, n.mark});
    out.generations.push_back(n.generation);
  }
  out.cascade.truncated = capped;
  return out;
}

SimResult simulate_power_law(const SimConfig& cfg) {
  const auto& k = cfg.pl_params;
  CounterRng rng(cfg.seed);
  SimResult out;
  auto& events = out.cascade.events;

  auto intensity = [&](double t) {
    double lam = cfg.pl_lambda0 * kernel_power_law(t, k) / k.phi0;
    for (const auto& e : events) lam += e.mark * k.p * kernel_power_law(t - e.time, k);
    return lam;
  };

  // Ogata thinning. Both the baseline and every kernel term are nonincreasing
  // in time, so the intensity at the current time majorizes the future.
  double t = 0.0;
  while (events.size() < cfg.max_events) {
    const double bar = intensity(t);
    if (bar <= 0.0) break;
    t += rng.exponential(bar);
    if (t > cfg.t_max) break;
    if (rng.uniform() * bar <= intensity(t)) {
      events.push_back({t, cfg.pl_mark_value});
    }
  }
  out.cascade.truncated = events.size() >= cfg.max_events;
  return out;
}

}  // namespace

SimResult simulate(const SimConfig& config) {
  config.validate();
  if (config.kernel == KernelKind::power_law) return simulate_power_law(config);
  if (config.track_generations) return simulate_exp_branching(config);
  return simulate_exp_thinning(config);
}

HawkesExpParams batch_item_params(std::uint64_t seed, std::size_t item_index,
                                  const HeterogeneityConfig& het) {
  CounterRng rng = CounterRng(seed).split(2 * item_index);
  HawkesExpParams p;
  p.beta = std::exp(het.log_beta_mean + het.log_beta_sigma * rng.normal());
  p.rho1 = rng.uniform_range(het.rho1_min, het.rho1_max);
  p.lambda0 = std::exp(het.log_lambda0_mean + het.log_lambda0_sigma * rng.normal());
  switch (het.mark_law) {
    case MarkLaw::constant:
      p.rho2 = p.rho1 * p.rho1;
      break;
    case MarkLaw::exponential:
      p.rho2 = 2.0 * p.rho1 * p.rho1;
      break;
    case MarkLaw::lognormal:
      p.rho2 = 2.0 * p.rho1 * p.rho1;
      break;
  }
  return p;
}

std::vector<Cascade> simulate_batch(std::uint64_t seed, std::size_t n_items,
                                    const HeterogeneityConfig& het) {
  std::vector<Cascade> out;
  out.reserve(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    SimConfig cfg;
    cfg.exp_params = batch_item_params(seed, i, het);
    cfg.mark_law = het.mark_law;
    cfg.t_max = het.t_max;
    cfg.max_events = het.max_events;
    cfg.seed = mix64(seed ^ mix64(2 * i + 1));
    SimResult res = simulate(cfg);
    res.cascade.item_id = "item-" + std::to_string(i);
    CounterRng noise_rng = CounterRng(seed).split(0x5eed0000ULL + i);
    const double ns = het.attr_noise_sigma;
    res.cascade.static_attrs = {
        std::log(cfg.exp_params.beta) + ns * noise_rng.normal(),
        cfg.exp_params.rho1 + ns * noise_rng.normal(),
        std::log(cfg.exp_params.lambda0) + ns * noise_rng.normal(),
        noise_rng.normal(),  // distractors
        noise_rng.normal(),
    };
    out.push_back(std::move(res.cascade));
  }
  return out;
}

}  // namespace hawkescast
