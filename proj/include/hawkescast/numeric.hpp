#pragma once

#include <cmath>

namespace hawkescast {

/// 1 - e^{-x} without cancellation for small x.
inline double one_minus_exp_neg(double x) { return -std::expm1(-x); }

}  // namespace hawkescast
