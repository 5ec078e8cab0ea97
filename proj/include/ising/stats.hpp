#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ising {

// Mean / variance accumulator with Kahan-compensated sums, so that millions
// of small Monte Carlo terms accumulate without drift.
class MeanVar {
 public:
  void add(double x) {
    n_ += 1;
    accumulate(sum_, c1_, x);
    accumulate(sumsq_, c2_, x * x);
  }

  std::size_t count() const { return n_; }
  double mean() const { return n_ ? sum_ / static_cast<double>(n_) : 0.0; }

  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const {
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    double v = (sumsq_ - sum_ * sum_ / n) / (n - 1.0);
    return v > 0.0 ? v : 0.0;  // clip roundoff negatives
  }

  double stddev() const { return std::sqrt(variance()); }

  // Standard error of the mean (i.i.d. samples).
  double stderror() const {
    return n_ ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  static void accumulate(double& sum, double& comp, double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  std::size_t n_ = 0;
  double sum_ = 0.0, c1_ = 0.0;
  double sumsq_ = 0.0, c2_ = 0.0;
};

// Point estimate with a standard error, the return type of every Monte Carlo
// estimator in the library.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

inline Estimate to_estimate(const MeanVar& acc) {
  return {acc.mean(), acc.stderror()};
}

double mean_of(std::span<const double> xs);

// q-quantile (0 <= q <= 1) by linear interpolation of order statistics;
// the input must already be sorted ascending.
double quantile_sorted(std::span<const double> sorted, double q);

// Integrated autocorrelation time of a stationary series using Sokal's
// adaptive window (smallest W with W >= c * tau(W), c = 6).  Returns >= 1;
// series shorter than 2 or with zero variance give 1.
double integrated_autocorr_time(std::span<const double> xs);

// Mean and standard error of a correlated series via non-overlapping batch
// means; the batch length is chosen as max(1, size/32).
struct BatchStats {
  double mean = 0.0;
  double se = 0.0;
  std::size_t batches = 0;
};
BatchStats batch_means(std::span<const double> xs);

}  // namespace ising
