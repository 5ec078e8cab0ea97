#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace ising {

// Cavity-field scalar algebra shared by the tree, population and
// thermodynamics code.  Fields h live on the extended real line; +infinity
// is the sentinel for a spin clamped to +1.

inline constexpr double kTanhClamp = 1.0 - 1e-15;
inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();

// tanh that maps the clamped-spin sentinel to exactly +/-1.
inline double tanh_field(double h) {
  if (std::isinf(h)) return h > 0 ? 1.0 : -1.0;
  return std::tanh(h);
}

// atanh(tanh(beta) * x) for x = tanh(h) of a child field, with the argument
// clamped to [-1+1e-15, 1-1e-15] to avoid the logarithmic singularity.
// For a clamped child (x = 1) the increment is beta itself, exactly.
inline double cavity_increment(double tanh_beta, double x) {
  double y = std::clamp(tanh_beta * x, -kTanhClamp, kTanhClamp);
  return std::atanh(y);
}

// As cavity_increment, additionally clamped to [-beta, beta].  The true
// increment satisfies |atanh(tanh(beta) tanh(h))| < beta strictly; the clamp
// only removes last-ulp excursions when tanh saturates, which keeps the
// free <= plus pointwise coupling exact in floating point.
inline double cavity_increment_capped(double beta, double tanh_beta, double x) {
  return std::clamp(cavity_increment(tanh_beta, x), -beta, beta);
}

// Correlation <sigma_u sigma_v> across a single coupling of strength beta
// between two spins whose cavity magnetizations are x1 = tanh h1, x2 = tanh h2.
inline double edge_correlation(double tanh_beta, double x1, double x2) {
  return (tanh_beta + x1 * x2) / (1.0 + tanh_beta * x1 * x2);
}

}  // namespace ising
