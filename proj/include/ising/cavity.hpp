#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ising/degree_law.hpp"
#include "ising/errors.hpp"
#include "ising/rng.hpp"
#include "ising/stats.hpp"
#include "ising/tree.hpp"

namespace ising {

// Sample pool representing the law of the cavity field at one iteration of
// the distributional recursion  h' = B + sum_{i<=K} atanh(tanh(beta) tanh(h_i)).
// The +inf sentinel marks a clamped (+1) field, used by the plus start.
struct FieldPopulation {
  std::vector<double> samples;
  double beta = 0.0;
  double B = 0.0;
  std::uint32_t iteration = 0;

  std::size_t size() const { return samples.size(); }
};

FieldPopulation make_population(std::size_t n, double beta, double B,
                                Boundary start);

// One population-dynamics step with fresh randomness: each new sample uses
// K ~ offspring_law and K uniform (with replacement) draws from the old pool.
FieldPopulation iterate(const FieldPopulation& pop,
                        const DegreeLaw& offspring_law, Rng& rng);

struct SolveOptions {
  std::size_t pool_size = 100000;
  std::uint32_t t_max = 2000;
  // Convergence tolerance: W1 distance between the free- and plus-start
  // pools measured on tanh-transformed samples.
  double tol = 1e-3;
  // Quantile levels of the free pool to record after every iteration
  // (as exact order statistics, index floor(q * (pool_size - 1))).
  // Empty disables the per-iteration sort.
  std::vector<double> track_quantiles;
};

struct FixedPointResult {
  FieldPopulation population;       // free-start pool: the h* estimate
  FieldPopulation plus_population;  // plus-start pool, for diagnostics
  double w1_residual = 0.0;   // W1(tanh) between the last two free iterates
  double bracket_gap = 0.0;   // W1(tanh) between free and plus pools at exit
  std::uint32_t iterations = 0;
  bool converged = false;
  // Samples where free > plus was ever observed (the coupling makes this
  // impossible; any nonzero count is a defect).
  std::size_t order_violations = 0;
  // Row t = tracked order statistics of the free pool after iteration t
  // (row 0 is the initial pool); empty unless requested in SolveOptions.
  std::vector<std::vector<double>> quantile_history;
};

// Monotone bracketing solve.  Both pools evolve under one frozen realization
// of the offspring counts and resampling indices (regenerated from a fixed
// substream every iteration), which couples them so that free <= plus holds
// pointwise and both sequences are pointwise monotone in t; the W1 gap on
// the tanh scale is then exactly the mean coordinate gap and decreases
// deterministically.  Stops when the gap is <= tol.
FixedPointResult solve(const DegreeLaw& offspring_law, double beta, double B,
                       const SolveOptions& opts, Rng& rng);

// Exception-carrying variant used by the command-line driver.
struct NotConvergedError : Error {
  explicit NotConvergedError(FixedPointResult r);
  FixedPointResult result;
};
FixedPointResult solve_checked(const DegreeLaw& offspring_law, double beta,
                               double B, const SolveOptions& opts, Rng& rng);

// Deterministic fixed point of h = B + (k-1) atanh(tanh(beta) tanh(h))
// reached from h0 = B (monotone nondecreasing iterates).
double scalar_bethe_fixed_point(std::uint32_t k_minus_1, double beta, double B,
                                double tol = 1e-13);

// Exact W1 distance between two equal-size empirical laws: mean absolute
// difference of order statistics.
double w1_distance(std::span<const double> a, std::span<const double> b);

// Monte Carlo check of the stationarity identity
//   E[L psi(X1, g_L(X2..X_L))] = mean(P) * E[psi(X1, X2)],
// psi(x,y) = xy/(1 + tanh(beta) xy), X = tanh(h*), L ~ root_law,
// g_l(x2..x_l) = tanh(B + sum_j atanh(tanh(beta) x_j)).
struct IdentityCheck {
  Estimate lhs;
  Estimate rhs;
  Estimate diff;  // paired estimate of lhs - rhs (shared X1 draws)
};
IdentityCheck fixed_point_identity_check(const FieldPopulation& pop,
                                         const DegreeLaw& root_law,
                                         const DegreeLaw& offspring_law,
                                         std::size_t samples, Rng& rng);

}  // namespace ising
