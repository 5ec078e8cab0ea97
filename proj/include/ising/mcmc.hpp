#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ising/graph.hpp"
#include "ising/rng.hpp"
#include "ising/stats.hpp"

namespace ising {

// Heat-bath (Glauber) dynamics for the ferromagnet on a multigraph.
//
// A site update redraws sigma_v from its conditional law: P(sigma_v = +1) =
// sigmoid(2 (beta * S_v + B)) with S_v the sum of neighboring spins, parallel
// edges counted with multiplicity.  Self-loops add a constant to the energy,
// so they are excluded from the dynamics and from S_v; they re-enter the
// edge-energy observable as a +1 per loop.
class SpinState {
 public:
  SpinState(const MultiGraph& g, double beta, double B);

  // Rebuilds the flip-probability table; the spin configuration is kept.
  void set_params(double beta, double B);
  void set_all(std::int8_t s);
  void randomize(Rng& rng);

  // n random-site heat-bath updates.
  void glauber_sweep(Rng& rng);

  // (1/n) (sum over non-loop edges of sigma_u sigma_v + #loops), the
  // beta-derivative of (1/n) log Z_n at fixed B.
  double edge_energy() const {
    return (static_cast<double>(edge_sum_) + static_cast<double>(loops_)) /
           static_cast<double>(n_);
  }
  double magnetization() const;

  double beta() const { return beta_; }
  double external_field() const { return field_; }
  std::uint32_t size() const { return n_; }
  std::span<const std::int8_t> spins() const { return spins_; }
  // Incrementally maintained non-loop edge sum, and a from-scratch recount
  // (exposed so tests can assert the incremental bookkeeping never drifts;
  // both are integer-exact).
  std::int64_t edge_sum() const { return edge_sum_; }
  std::int64_t recompute_edge_sum() const;

 private:
  void rebuild_sums();
  double flip_prob(std::int32_t neighbor_sum) const;

  const MultiGraph* g_;
  std::uint32_t n_;
  double beta_ = 0.0, field_ = 0.0;
  std::size_t loops_ = 0;
  std::int32_t s_max_ = 0;  // largest non-loop degree
  std::vector<std::int8_t> spins_;
  std::vector<std::int32_t> neigh_sum_;  // sum of neighbor spins, loops excluded
  std::vector<double> p_plus_;           // P(+1) indexed by neighbor sum + s_max
  std::int64_t edge_sum_ = 0;
};

// Time average of the edge energy over `sweeps` sweeps after discarding
// `burn_in` sweeps.  burn_in = 0 selects the adaptive default: 1000 sweeps
// plus a pilot estimate of the integrated autocorrelation time tau, extended
// until at least 10 * tau sweeps are discarded.  The standard error comes
// from batch means, so it is valid for a correlated series.
struct EnergyEstimate {
  Estimate energy;
  double tau_int = 1.0;     // in sweeps
  double ess = 0.0;         // sweeps / tau_int
  std::size_t sweeps = 0;
  std::size_t burn_in = 0;  // sweeps actually discarded
};

EnergyEstimate estimate_edge_energy(SpinState& state, std::size_t sweeps,
                                    std::size_t burn_in, Rng& rng);

// Finite-volume pressure (1/n) log Z_n(beta, B) by thermodynamic integration
// of the edge energy from beta' = 0, anchored at the exact
// (1/n) log Z_n(0, B) = log(2 cosh B).  The beta' = 0 integrand is exact
// (independent spins); each later grid point is measured by Glauber dynamics
// warm-started from the previous one, trapezoid rule in between.
struct PressurePoint {
  double beta = 0.0;
  Estimate energy;
  double tau_int = 0.0;  // 0 marks the exact beta = 0 entry
};

struct PressureResult {
  double psi = 0.0;
  double se = 0.0;            // propagated Monte Carlo error
  double bias_estimate = 0.0; // trapezoid curvature estimate (second differences)
  std::vector<PressurePoint> points;
};

struct IntegrationOptions {
  double grid_spacing = 0.05;
  std::size_t sweeps_per_point = 512;
  std::size_t burn_in_first = 0;   // 0 = adaptive at the first measured point
  std::size_t burn_in_warm = 200;  // after a warm start from the previous beta
};

PressureResult pressure_by_integration(const MultiGraph& g, double beta,
                                       double B, const IntegrationOptions& opt,
                                       Rng& rng);

}  // namespace ising
