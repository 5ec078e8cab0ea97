#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ising/rng.hpp"

namespace ising {

enum class DegreeFamily { regular, poisson, power_law, empirical };

std::string family_name(DegreeFamily f);

// Probability law on degrees {0,1,2,...} with finite (truncated) support.
// Immutable after construction; the pmf is renormalized to total mass 1 and
// the mean and cdf are cached.  Laws with unbounded support (poisson,
// power-law) are truncated at k_max and renormalized; the discarded tail
// mass is recoverable from the family parameters.
class DegreeLaw {
 public:
  // Point mass at degree k.
  static DegreeLaw regular(std::uint32_t k);
  // Poisson(lambda) truncated at k_max (k_max = 0 picks a cutoff with
  // negligible tail, < 1e-14 of the mass).
  static DegreeLaw poisson(double lambda, std::size_t k_max = 0);
  // pmf[k] proportional to k^(-tau) on k_min <= k <= k_max.
  static DegreeLaw power_law(double tau, std::uint32_t k_min = 1,
                             std::size_t k_max = 1000000);
  // Arbitrary nonnegative weights, renormalized.
  static DegreeLaw from_pmf(std::vector<double> pmf);

  DegreeFamily family() const { return family_; }
  const std::vector<double>& pmf() const { return pmf_; }
  double mean() const { return mean_; }
  std::size_t max_degree() const { return pmf_.size() - 1; }
  double prob(std::size_t k) const {
    return k < pmf_.size() ? pmf_[k] : 0.0;
  }

  // Family parameters (meaningful fields depend on the family tag);
  // kept for serialization and reporting.
  double tau() const { return tau_; }
  double lambda() const { return lambda_; }
  std::uint32_t k_min() const { return k_min_; }
  std::size_t k_max() const { return k_max_; }

  // Inverse-cdf sampling; deterministic given the generator state.
  std::uint32_t sample_one(Rng& rng) const;
  std::vector<std::uint32_t> sample(Rng& rng, std::size_t n) const;

 private:
  DegreeLaw() = default;
  void finalize();  // validate, renormalize, cache mean and cdf

  DegreeFamily family_ = DegreeFamily::empirical;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
  double tau_ = 0.0;
  double lambda_ = 0.0;
  std::uint32_t k_min_ = 0;
  std::size_t k_max_ = 0;
};

// Size-biased law rho_k = (k+1) P_{k+1} / mean(P): the offspring law of
// non-root vertices in the local tree limit.  Point masses stay point
// masses (regular(k) -> regular(k-1)).
DegreeLaw size_biased(const DegreeLaw& law);

// Upper tail sum P(X >= k), accumulated from the top of the support.
double tail_sum(const DegreeLaw& law, std::size_t k);

// Smallest c such that P(X >= k) <= c * k^(-(tau-1)) for every k >= 1 in
// the support, together with the k attaining it.  Always finite on
// truncated laws.
struct TailBound {
  double c = 0.0;
  std::size_t k_at_max = 0;
};
TailBound verify_strongly_finite_mean(const DegreeLaw& law, double tau);

}  // namespace ising
