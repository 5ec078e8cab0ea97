#include "ising/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ising/errors.hpp"
#include "ising/fields.hpp"

namespace ising {

namespace {

// log(exp(a) + exp(b)) without overflow
double logaddexp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(a) && a < 0) return a;  // both -inf
  return a + std::log1p(std::exp(b - a));
}

// log(cosh(x)); exactly 0 at x = 0
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

struct PoolView {
  const FieldPopulation& pop;
  double draw_x(Rng& rng) const {
    return tanh_field(pop.samples[rng.below(pop.samples.size())]);
  }
};

void check_pool(const FieldPopulation& pop) {
  if (pop.samples.empty()) throw Error("thermo: empty field pool");
}

// third pressure term on given draws: log(e^B prod(1+bh x) + e^-B prod(1-bh x))
double log_term(double B, double beta_hat, std::span<const double> xs) {
  double s_plus = B, s_minus = -B;
  for (double x : xs) {
    s_plus += std::log1p(beta_hat * x);
    s_minus += std::log1p(-beta_hat * x);
  }
  return logaddexp(s_plus, s_minus);
}

}  // namespace

Estimate pressure(const FieldPopulation& pop, const DegreeLaw& root_law,
                  double beta, double B, std::size_t mc_samples, Rng& rng) {
  check_pool(pop);
  const double b = std::abs(B);  // phi(beta, -B) = phi(beta, B)
  const double beta_hat = std::tanh(beta);
  const double half_pbar = 0.5 * root_law.mean();
  const double lc = log_cosh(beta);
  PoolView pool{pop};
  MeanVar acc;
  std::vector<double> xs;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    const std::uint32_t ell = root_law.sample_one(rng);
    xs.clear();
    for (std::uint32_t i = 0; i < ell; ++i) xs.push_back(pool.draw_x(rng));
    const double pair = std::log1p(beta_hat * pool.draw_x(rng) * pool.draw_x(rng));
    acc.add(half_pbar * lc - half_pbar * pair + log_term(b, beta_hat, xs));
  }
  return to_estimate(acc);
}

Estimate magnetization(const FieldPopulation& pop, const DegreeLaw& root_law,
                       double beta, double B, std::size_t mc_samples, Rng& rng) {
  check_pool(pop);
  const double b = std::abs(B);
  const double sign = B < 0.0 ? -1.0 : 1.0;  // M is odd in B
  const double beta_hat = std::tanh(beta);
  PoolView pool{pop};
  MeanVar acc;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    const std::uint32_t ell = root_law.sample_one(rng);
    double h = b;
    for (std::uint32_t i = 0; i < ell; ++i)
      h += cavity_increment_capped(beta, beta_hat, pool.draw_x(rng));
    acc.add(std::tanh(h));
  }
  Estimate est = to_estimate(acc);
  est.value *= sign;
  return est;
}

Estimate internal_energy(const FieldPopulation& pop, double degree_mean,
                         double beta, std::size_t mc_samples, Rng& rng) {
  check_pool(pop);
  const double beta_hat = std::tanh(beta);
  const double half_pbar = 0.5 * degree_mean;
  PoolView pool{pop};
  MeanVar acc;
  for (std::size_t s = 0; s < mc_samples; ++s)
    acc.add(-half_pbar *
            edge_correlation(beta_hat, pool.draw_x(rng), pool.draw_x(rng)));
  return to_estimate(acc);
}

DerivativeCheck magnetization_vs_pressure_slope(const FieldPopulation& pop,
                                                const DegreeLaw& root_law,
                                                double beta, double B,
                                                double delta,
                                                std::size_t mc_samples,
                                                Rng& rng) {
  check_pool(pop);
  if (!(B - delta > 0.0))
    throw Error("magnetization_vs_pressure_slope: need B - delta > 0");
  const double beta_hat = std::tanh(beta);
  PoolView pool{pop};
  MeanVar m_acc, fd_acc, diff_acc;
  std::vector<double> xs;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    const std::uint32_t ell = root_law.sample_one(rng);
    xs.clear();
    double h = B;
    for (std::uint32_t i = 0; i < ell; ++i) {
      const double x = pool.draw_x(rng);
      xs.push_back(x);
      h += cavity_increment_capped(beta, beta_hat, x);
    }
    const double m = std::tanh(h);
    // cosh and pair terms of phi are B-independent: they cancel here exactly
    const double fd = (log_term(B + delta, beta_hat, xs) -
                       log_term(B - delta, beta_hat, xs)) /
                      (2.0 * delta);
    m_acc.add(m);
    fd_acc.add(fd);
    diff_acc.add(m - fd);
  }
  return {to_estimate(m_acc), to_estimate(fd_acc), to_estimate(diff_acc), delta};
}

DerivativeCheck energy_vs_pressure_slope(const FieldPopulation& pop,
                                         const DegreeLaw& root_law, double beta,
                                         double B, double delta,
                                         std::size_t mc_samples, Rng& rng) {
  check_pool(pop);
  if (!(beta - delta >= 0.0))
    throw Error("energy_vs_pressure_slope: need beta - delta >= 0");
  const double bp = std::tanh(beta + delta);
  const double bm = std::tanh(beta - delta);
  const double beta_hat = std::tanh(beta);
  const double half_pbar = 0.5 * root_law.mean();
  const double lc_diff = half_pbar * (log_cosh(beta + delta) - log_cosh(beta - delta));
  PoolView pool{pop};
  MeanVar u_acc, fd_acc, diff_acc;
  std::vector<double> xs;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    const std::uint32_t ell = root_law.sample_one(rng);
    xs.clear();
    for (std::uint32_t i = 0; i < ell; ++i) xs.push_back(pool.draw_x(rng));
    const double y1 = pool.draw_x(rng), y2 = pool.draw_x(rng);
    const double u = -half_pbar * edge_correlation(beta_hat, y1, y2);
    const double phi_plus = -half_pbar * std::log1p(bp * y1 * y2) +
                            log_term(B, bp, xs);
    const double phi_minus = -half_pbar * std::log1p(bm * y1 * y2) +
                             log_term(B, bm, xs);
    const double fd = (lc_diff + phi_plus - phi_minus) / (2.0 * delta);
    u_acc.add(u);
    fd_acc.add(fd);
    diff_acc.add(u + fd);  // U = -d phi/d beta
  }
  return {to_estimate(u_acc), to_estimate(fd_acc), to_estimate(diff_acc), delta};
}

namespace {

std::vector<FdEstimate> centered_differences(std::span<const double> xs,
                                             std::span<const Estimate> ys,
                                             double noise_tol,
                                             const char* what) {
  if (xs.size() != ys.size())
    throw SizeMismatchError("finite differences: grid/value size mismatch");
  if (xs.size() < 3) throw Error("finite differences: need at least 3 points");
  std::vector<FdEstimate> out;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double dx = xs[i + 1] - xs[i - 1];
    if (!(dx > 0.0)) throw Error("finite differences: grid must be increasing");
    FdEstimate fd;
    fd.x = xs[i];
    fd.value = (ys[i + 1].value - ys[i - 1].value) / dx;
    fd.se = std::sqrt(ys[i + 1].se * ys[i + 1].se + ys[i - 1].se * ys[i - 1].se) / dx;
    if (fd.se > noise_tol)
      throw StepTooSmallError(std::string(what) +
                              ": Monte Carlo noise dominates the step");
    out.push_back(fd);
  }
  return out;
}

}  // namespace

std::vector<FdEstimate> susceptibility_from_sweep(std::span<const double> Bs,
                                                  std::span<const Estimate> Ms,
                                                  double noise_tol) {
  return centered_differences(Bs, Ms, noise_tol, "susceptibility");
}

std::vector<FdEstimate> specific_heat_from_sweep(std::span<const double> betas,
                                                 std::span<const Estimate> Us,
                                                 double noise_tol) {
  auto out = centered_differences(betas, Us, noise_tol, "specific_heat");
  for (auto& fd : out) {
    fd.value *= -fd.x * fd.x;
    fd.se *= fd.x * fd.x;
  }
  return out;
}

double critical_beta(double offspring_mean) {
  if (!(offspring_mean > 0.0)) throw Error("critical_beta: mean must be > 0");
  if (offspring_mean <= 1.0) return std::numeric_limits<double>::infinity();
  return std::atanh(1.0 / offspring_mean);
}

BethePoint bethe_regular_point(std::uint32_t k, double beta, double B,
                               double tol) {
  if (k < 1) throw Error("bethe_regular_point: degree must be >= 1");
  BethePoint pt;
  pt.h = scalar_bethe_fixed_point(k - 1, beta, B, tol);
  const double x = std::tanh(pt.h);
  const double beta_hat = std::tanh(beta);
  const double kk = static_cast<double>(k);
  pt.phi = 0.5 * kk * log_cosh(beta) - 0.5 * kk * std::log1p(beta_hat * x * x) +
           logaddexp(B + kk * std::log1p(beta_hat * x),
                     -B + kk * std::log1p(-beta_hat * x));
  pt.M = std::tanh(B + kk * cavity_increment_capped(beta, beta_hat, x));
  pt.U = -0.5 * kk * edge_correlation(beta_hat, x, x);
  return pt;
}

double bethe_susceptibility_fd(std::uint32_t k, double beta, double B,
                               double delta) {
  if (!(B - delta > 0.0))
    throw Error("bethe_susceptibility_fd: need B - delta > 0");
  const BethePoint hi = bethe_regular_point(k, beta, B + delta);
  const BethePoint lo = bethe_regular_point(k, beta, B - delta);
  return (hi.M - lo.M) / (2.0 * delta);
}

}  // namespace ising
