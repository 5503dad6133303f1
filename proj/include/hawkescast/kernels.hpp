#pragma once

#include <cmath>
#include <stdexcept>

#include "hawkescast/numeric.hpp"
#include "hawkescast/types.hpp"

namespace hawkescast {

/// phi(x) = e^{-beta x}.
inline double kernel_exp(double x, double beta) {
  if (x < 0.0) throw std::domain_error("kernel_exp: x must be >= 0");
  if (!(beta > 0.0)) throw std::domain_error("kernel_exp: beta must be > 0");
  return std::exp(-beta * x);
}

/// Primitive of the exponential kernel, Phi(x) = (1 - e^{-beta x}) / beta.
inline double kernel_exp_primitive(double x, double beta) {
  if (x < 0.0) throw std::domain_error("kernel_exp_primitive: x must be >= 0");
  if (is_infinite_horizon(x)) return 1.0 / beta;
  return one_minus_exp_neg(beta * x) / beta;
}

/// Flat-then-power-law kernel value (without the infectiousness multiplier p).
inline double kernel_power_law(double x, const PowerLawKernelParams& k) {
  if (x < 0.0) throw std::domain_error("kernel_power_law: x must be >= 0");
  if (x <= k.tau_cut) return k.phi0;
  return k.phi0 * std::pow(k.tau_cut / x, 1.0 + k.theta);
}

/// Primitive Phi(x) = int_0^x phi(u) du for the power-law kernel.
/// For x > tau_cut:  phi0*tau + phi0*tau/theta * (1 - (tau/x)^theta).
inline double kernel_power_law_primitive(double x, const PowerLawKernelParams& k) {
  if (x < 0.0) throw std::domain_error("kernel_power_law_primitive: x must be >= 0");
  if (is_infinite_horizon(x)) {
    if (!(k.theta > 0.0))
      throw std::domain_error("kernel_power_law_primitive: integral diverges for theta <= 0");
    return k.phi0 * k.tau_cut * (1.0 + 1.0 / k.theta);
  }
  if (x <= k.tau_cut) return k.phi0 * x;
  return k.phi0 * k.tau_cut + k.phi0 * k.tau_cut / k.theta * (1.0 - std::pow(k.tau_cut / x, k.theta));
}

/// Total kernel mass int_0^inf phi (without p).
inline double kernel_power_law_total_mass(const PowerLawKernelParams& k) {
  return kernel_power_law_primitive(kInfiniteHorizon, k);
}

}  // namespace hawkescast
