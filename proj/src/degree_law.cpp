#include "ising/degree_law.hpp"

#include <algorithm>
#include <cmath>

#include "ising/errors.hpp"

namespace ising {

std::string family_name(DegreeFamily f) {
  switch (f) {
    case DegreeFamily::regular: return "regular";
    case DegreeFamily::poisson: return "poisson";
    case DegreeFamily::power_law: return "power_law";
    case DegreeFamily::empirical: return "empirical";
  }
  return "?";
}

void DegreeLaw::finalize() {
  if (pmf_.empty()) throw InvalidProbabilityError("empty pmf");
  double total = 0.0, comp = 0.0;
  for (double p : pmf_) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw InvalidProbabilityError("pmf entries must be finite and >= 0");
    double y = p - comp;
    double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  if (total <= 0.0) throw InvalidProbabilityError("pmf has zero total mass");
  for (double& p : pmf_) p /= total;

  // trim trailing zero mass so max_degree() is tight
  while (pmf_.size() > 1 && pmf_.back() == 0.0) pmf_.pop_back();

  cdf_.resize(pmf_.size());
  double run = 0.0, rc = 0.0;
  double m = 0.0, mc = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    double y = pmf_[k] - rc;
    double t = run + y;
    rc = (t - run) - y;
    run = t;
    cdf_[k] = run;
    double my = static_cast<double>(k) * pmf_[k] - mc;
    double mt = m + my;
    mc = (mt - m) - my;
    m = mt;
  }
  cdf_.back() = 1.0;  // guard the sampler against roundoff at the top
  mean_ = m;
}

DegreeLaw DegreeLaw::regular(std::uint32_t k) {
  DegreeLaw law;
  law.family_ = DegreeFamily::regular;
  law.pmf_.assign(static_cast<std::size_t>(k) + 1, 0.0);
  law.pmf_[k] = 1.0;
  law.k_min_ = k;
  law.k_max_ = k;
  law.finalize();
  return law;
}

DegreeLaw DegreeLaw::poisson(double lambda, std::size_t k_max) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw Error("poisson: lambda must be finite and >= 0");
  if (k_max == 0) {
    // generous cutoff: tail mass beyond it is far below 1e-14
    k_max = static_cast<std::size_t>(
        std::ceil(lambda + 12.0 * std::sqrt(lambda + 1.0) + 30.0));
  }
  DegreeLaw law;
  law.family_ = DegreeFamily::poisson;
  law.lambda_ = lambda;
  law.k_max_ = k_max;
  law.pmf_.resize(k_max + 1);
  // log-space recurrence avoids overflow for large lambda
  double logp = -lambda;
  for (std::size_t k = 0; k <= k_max; ++k) {
    law.pmf_[k] = std::exp(logp);
    logp += std::log(lambda) - std::log(static_cast<double>(k + 1));
  }
  law.finalize();
  return law;
}

DegreeLaw DegreeLaw::power_law(double tau, std::uint32_t k_min,
                               std::size_t k_max) {
  if (!(tau > 2.0)) throw Error("power_law: tau must exceed 2");
  if (k_min < 1 || k_max < k_min) throw Error("power_law: need 1 <= k_min <= k_max");
  DegreeLaw law;
  law.family_ = DegreeFamily::power_law;
  law.tau_ = tau;
  law.k_min_ = k_min;
  law.k_max_ = k_max;
  law.pmf_.assign(k_max + 1, 0.0);
  for (std::size_t k = k_min; k <= k_max; ++k)
    law.pmf_[k] = std::pow(static_cast<double>(k), -tau);
  law.finalize();
  return law;
}

DegreeLaw DegreeLaw::from_pmf(std::vector<double> pmf) {
  DegreeLaw law;
  law.family_ = DegreeFamily::empirical;
  law.pmf_ = std::move(pmf);
  law.finalize();
  law.k_max_ = law.max_degree();
  return law;
}

std::uint32_t DegreeLaw::sample_one(Rng& rng) const {
  double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<std::uint32_t>(it - cdf_.begin());
}

std::vector<std::uint32_t> DegreeLaw::sample(Rng& rng, std::size_t n) const {
  std::vector<std::uint32_t> out(n);
  for (auto& d : out) d = sample_one(rng);
  return out;
}

DegreeLaw size_biased(const DegreeLaw& law) {
  if (law.mean() <= 0.0)
    throw ZeroMeanError("size_biased requires a law with positive mean");
  if (law.family() == DegreeFamily::regular)
    return DegreeLaw::regular(static_cast<std::uint32_t>(law.max_degree()) - 1);
  const auto& p = law.pmf();
  std::vector<double> rho(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    rho[k] = static_cast<double>(k + 1) * p[k + 1] / law.mean();
  return DegreeLaw::from_pmf(std::move(rho));
}

double tail_sum(const DegreeLaw& law, std::size_t k) {
  const auto& p = law.pmf();
  if (k >= p.size()) return 0.0;
  double total = 0.0, comp = 0.0;
  for (std::size_t i = p.size(); i-- > k;) {
    double y = p[i] - comp;
    double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return total;
}

TailBound verify_strongly_finite_mean(const DegreeLaw& law, double tau) {
  if (!(tau > 2.0)) throw Error("verify_strongly_finite_mean: tau must exceed 2");
  const auto& p = law.pmf();
  TailBound best;
  // backward-accumulated tails, checked at every k >= 1 in the support
  double tail = 0.0, comp = 0.0;
  std::vector<double> tails(p.size(), 0.0);
  for (std::size_t i = p.size(); i-- > 0;) {
    double y = p[i] - comp;
    double t = tail + y;
    comp = (t - tail) - y;
    tail = t;
    tails[i] = tail;
  }
  for (std::size_t k = 1; k < p.size(); ++k) {
    double c = tails[k] * std::pow(static_cast<double>(k), tau - 1.0);
    if (c > best.c) {
      best.c = c;
      best.k_at_max = k;
    }
  }
  return best;
}

}  // namespace ising
