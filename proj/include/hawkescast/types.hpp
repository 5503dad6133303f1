#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkescast {

/// Sentinel for infinite time horizons. Every horizon formula handles it
/// explicitly; no arithmetic is ever done on it blindly.
inline constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

inline bool is_infinite_horizon(double x) { return std::isinf(x) && x > 0; }

struct Event {
  double time = 0.0;  // seconds since item creation
  double mark = 0.0;  // intensity jump size, >= 0
};

/// Event history of a single content item plus static attributes.
struct Cascade {
  std::string item_id;
  double created_at = 0.0;  // epoch seconds
  std::vector<Event> events;
  std::vector<double> static_attrs;
  bool truncated = false;

  // Number of events strictly before t, i.e. N(t) counts points in [0, t).
  std::size_t count_before(double t) const {
    std::size_t n = 0;
    for (const auto& e : events) {
      if (e.time < t)
        ++n;
      else
        break;
    }
    return n;
  }

  std::size_t size() const { return events.size(); }

  void validate() const {
    double prev = 0.0;
    for (const auto& e : events) {
      if (e.time < prev) throw std::invalid_argument("cascade: event times must be nondecreasing");
      if (e.mark < 0.0) throw std::invalid_argument("cascade: marks must be nonnegative");
      prev = e.time;
    }
  }
};

/// Parameters of the exponential-kernel self-excited process. Marks are
/// Y = beta*Z where Z has first/second moments (rho1, rho2); all closed
/// forms depend on the mark law only through these moments.
struct HawkesExpParams {
  double beta = 1.0;     // kernel decay rate, 1/s
  double rho1 = 0.0;     // E[Z], branching ratio, in [0, 1)
  double rho2 = 0.0;     // E[Z^2]
  double lambda0 = 0.0;  // initial intensity lambda(0), events/s

  double alpha() const { return beta * (1.0 - rho1); }
  double sigma2() const { return rho2 - rho1 * rho1; }
  // Limit variance-to-mean ratio of the count increment,
  // lim Var[N(t)-N(s)|F_s] / E[N(inf)-N(s)|F_s]. Equals
  // (1 + rho2 - rho1^2) / (1 - rho1)^2; dimensionless and independent of beta,
  // as it must be (counts are invariant to time rescaling).
  double Sigma2() const {
    const double r = 1.0 - rho1;
    return (1.0 + rho2 - rho1 * rho1) / (r * r);
  }

  void validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("HawkesExpParams: beta must be > 0");
    if (!(rho1 >= 0.0 && rho1 < 1.0))
      throw std::invalid_argument("HawkesExpParams: rho1 must be in [0, 1)");
    // Small slack so constant marks (rho2 = rho1^2) survive decimal rounding.
    if (!(rho2 >= rho1 * rho1 - 1e-12))
      throw std::invalid_argument("HawkesExpParams: rho2 must be >= rho1^2");
    if (!(lambda0 >= 0.0)) throw std::invalid_argument("HawkesExpParams: lambda0 must be >= 0");
    if (!(alpha() >= 1e-9))
      throw std::invalid_argument("HawkesExpParams: alpha = beta*(1-rho1) must be >= 1e-9");
  }
};

/// Flat-then-power-law kernel. phi(x) = phi0 on [0, tau_cut], then
/// phi0*(tau_cut/x)^(1+theta). `p` is the infectiousness multiplier applied
/// on top of the kernel (SEISMIC's parameter).
struct PowerLawKernelParams {
  double phi0 = 1.0;
  double tau_cut = 1.0;  // seconds
  double theta = 1.0;    // tail exponent, > 0 for a finite integral
  double p = 1.0;

  void validate() const {
    if (!(phi0 > 0.0)) throw std::invalid_argument("PowerLawKernelParams: phi0 must be > 0");
    if (!(tau_cut > 0.0)) throw std::invalid_argument("PowerLawKernelParams: tau_cut must be > 0");
    if (!(theta > 0.0)) throw std::invalid_argument("PowerLawKernelParams: theta must be > 0");
    if (!(p > 0.0)) throw std::invalid_argument("PowerLawKernelParams: p must be > 0");
  }
};

struct HorizonQuery {
  double s = 0.0;      // prediction time, seconds since creation
  double delta = 0.0;  // horizon length; may be kInfiniteHorizon

  void validate() const {
    if (!(s >= 0.0)) throw std::invalid_argument("HorizonQuery: s must be >= 0");
    if (!(delta > 0.0)) throw std::invalid_argument("HorizonQuery: delta must be > 0");
  }
};

}  // namespace hawkescast
