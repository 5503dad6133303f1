#include <cmath>
#include <functional>

#include "doctest.h"
#include "hawkescast/kernels.hpp"

using namespace hawkescast;

TEST_CASE("exponential kernel values") {
  CHECK(kernel_exp(0.0, 2.0) == 1.0);
  CHECK(kernel_exp(std::log(2.0), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  // Frozen from a 30-digit arbitrary-precision evaluation of e^{-0.4*3.7}.
  CHECK(kernel_exp(3.7, 0.4) == doctest::Approx(0.227637688383812738579637405795).epsilon(1e-15));
  CHECK_THROWS_AS(kernel_exp(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_exp(1.0, 0.0), std::domain_error);
}

TEST_CASE("power-law kernel values and continuity") {
  PowerLawKernelParams k{2.0, 3.0, 1.0, 1.0};
  CHECK(kernel_power_law(k.tau_cut, k) == k.phi0);
  CHECK(kernel_power_law(2.0 * k.tau_cut, k) == doctest::Approx(k.phi0 / 4.0).epsilon(1e-15));
  PowerLawKernelParams khalf{2.0, 3.0, 0.5, 1.0};
  // Frozen: 5^{-1.5} from arbitrary-precision evaluation.
  CHECK(kernel_power_law(5.0 * khalf.tau_cut, khalf) ==
        doctest::Approx(2.0 * 0.0894427190999915878563669467492).epsilon(1e-14));
  // Continuity at the cutoff.
  const double eps = 1e-9;
  CHECK(kernel_power_law(k.tau_cut + eps, k) ==
        doctest::Approx(kernel_power_law(k.tau_cut, k)).epsilon(1e-7));
  CHECK_THROWS_AS(kernel_power_law(-0.1, k), std::domain_error);
}

namespace {

// Simpson quadrature oracle, independent of the closed-form primitive.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("power-law primitive matches quadrature") {
  PowerLawKernelParams k{1.7, 2.5, 0.8, 1.0};
  auto phi = [&](double x) { return kernel_power_law(x, k); };
  for (double x : {0.5, 2.5, 4.0, 30.0, 500.0}) {
    const double numeric = simpson(phi, 0.0, x, 200000);
    CHECK(kernel_power_law_primitive(x, k) == doctest::Approx(numeric).epsilon(1e-7));
  }
}

TEST_CASE("power-law total mass") {
  PowerLawKernelParams k{1.5, 2.0, 1.0, 1.0};
  // int = phi0*tau + phi0*tau/theta = 1.5*2*(1 + 1) = 6.
  CHECK(kernel_power_law_total_mass(k) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(kernel_exp_primitive(kInfiniteHorizon, 2.0) == doctest::Approx(0.5));
}
