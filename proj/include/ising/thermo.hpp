#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ising/cavity.hpp"
#include "ising/degree_law.hpp"
#include "ising/rng.hpp"
#include "ising/stats.hpp"

namespace ising {

// Monte Carlo estimators of the limiting thermodynamic functions, driven by
// a converged cavity-field pool (h* samples) and the full degree law P.
// All of them implement the reflection phi(beta,-B) = phi(beta,B): a call
// with B < 0 evaluates at |B| (magnetization flips sign, the others are
// even in B), matching a pool solved at |B|.

// Limiting pressure:
//   phi = (Pbar/2) log cosh(beta) - (Pbar/2) E[log(1+tanh(beta) X1 X2)]
//         + E[log(e^B prod(1+tanh(beta) X_i) + e^-B prod(1-tanh(beta) X_i))],
// L ~ root_law i.i.d. pool draws X_i = tanh(h_i); products as sums of logs.
Estimate pressure(const FieldPopulation& pop, const DegreeLaw& root_law,
                  double beta, double B, std::size_t mc_samples, Rng& rng);

// Explicit magnetization  M = E[tanh(B + sum_{i<=L} atanh(tanh(beta) X_i))].
Estimate magnetization(const FieldPopulation& pop, const DegreeLaw& root_law,
                       double beta, double B, std::size_t mc_samples, Rng& rng);

// Explicit internal energy
//   U = -(Pbar/2) E[(tanh(beta) + X1 X2)/(1 + tanh(beta) X1 X2)].
Estimate internal_energy(const FieldPopulation& pop, double degree_mean,
                         double beta, std::size_t mc_samples, Rng& rng);

// Paired comparison of an explicit estimator against a centered finite
// difference of the pressure, evaluated on shared Monte Carlo draws and a
// fixed pool, so the difference estimator has tiny variance.
struct DerivativeCheck {
  Estimate explicit_est;  // M (or U)
  Estimate fd_est;        // d phi/d B  (or -d phi/d beta)
  Estimate diff;          // per-sample explicit - fd
  double delta = 0.0;
};
DerivativeCheck magnetization_vs_pressure_slope(const FieldPopulation& pop,
                                                const DegreeLaw& root_law,
                                                double beta, double B,
                                                double delta,
                                                std::size_t mc_samples,
                                                Rng& rng);
DerivativeCheck energy_vs_pressure_slope(const FieldPopulation& pop,
                                         const DegreeLaw& root_law, double beta,
                                         double B, double delta,
                                         std::size_t mc_samples, Rng& rng);

// Centered finite differences along a sweep; entry i of the result
// corresponds to grid interior point i+1.  Throws StepTooSmall when the
// propagated Monte Carlo noise of any difference quotient exceeds noise_tol.
struct FdEstimate {
  double value = 0.0;
  double se = 0.0;
  double x = 0.0;  // grid point the derivative refers to
};
std::vector<FdEstimate> susceptibility_from_sweep(std::span<const double> Bs,
                                                  std::span<const Estimate> Ms,
                                                  double noise_tol);
// C = -beta^2 dU/dbeta; the limit is conjectural, flagged by callers.
std::vector<FdEstimate> specific_heat_from_sweep(std::span<const double> betas,
                                                 std::span<const Estimate> Us,
                                                 double noise_tol);

// atanh(1/rho_mean) for rho_mean > 1, +inf otherwise.
double critical_beta(double offspring_mean);

// Deterministic evaluation on the k-regular tree (offspring k-1): scalar
// fixed point plus closed forms, no Monte Carlo.
struct BethePoint {
  double h = 0.0;  // scalar cavity fixed point
  double phi = 0.0;
  double M = 0.0;
  double U = 0.0;
};
BethePoint bethe_regular_point(std::uint32_t k, double beta, double B,
                               double tol = 1e-13);

// chi on the k-regular tree by centered difference of the closed-form M,
// re-solving the scalar fixed point at B +/- delta.
double bethe_susceptibility_fd(std::uint32_t k, double beta, double B,
                               double delta);

}  // namespace ising
