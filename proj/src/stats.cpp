#include "ising/stats.hpp"

#include <algorithm>
#include <cmath>

namespace ising {

double mean_of(std::span<const double> xs) {
  MeanVar acc;
  for (double x : xs) acc.add(x);
  return acc.mean();
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  double pos = q * static_cast<double>(sorted.size() - 1);
  pos = std::clamp(pos, 0.0, static_cast<double>(sorted.size() - 1));
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

double integrated_autocorr_time(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 1.0;
  MeanVar mv;
  for (double x : xs) mv.add(x);
  const double mean = mv.mean();
  // biased (1/n) autocovariances, standard for tau estimation
  double c0 = 0.0;
  for (double x : xs) c0 += (x - mean) * (x - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 1.0;

  const double c_window = 6.0;
  double tau = 1.0;
  for (std::size_t w = 1; w < n; ++w) {
    double cw = 0.0;
    for (std::size_t i = 0; i + w < n; ++i)
      cw += (xs[i] - mean) * (xs[i + w] - mean);
    cw /= static_cast<double>(n);
    tau += 2.0 * cw / c0;
    if (tau < 1.0) tau = 1.0;
    if (static_cast<double>(w) >= c_window * tau) break;
  }
  return tau;
}

BatchStats batch_means(std::span<const double> xs) {
  BatchStats out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  const std::size_t len = std::max<std::size_t>(1, n / 32);
  MeanVar over_batches;
  std::size_t i = 0;
  while (i + len <= n) {
    MeanVar one;
    for (std::size_t j = 0; j < len; ++j) one.add(xs[i + j]);
    over_batches.add(one.mean());
    i += len;
  }
  if (over_batches.count() == 0) {  // series shorter than one batch
    MeanVar all;
    for (double x : xs) all.add(x);
    return {all.mean(), all.stderror(), 1};
  }
  out.mean = over_batches.mean();
  out.se = over_batches.stderror();
  out.batches = over_batches.count();
  return out;
}

}  // namespace ising
