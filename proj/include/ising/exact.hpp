#pragma once

#include <cstdint>
#include <vector>

#include "ising/graph.hpp"

namespace ising {

// Ferromagnetic Ising instance on a small multigraph.  A self-loop adds the
// constant beta to the Hamiltonian (sigma_i^2 = 1); a parallel edge adds
// multiplicity * beta * sigma_u * sigma_v.  `plus_clamped` (optional, per
// vertex) conditions the Boltzmann measure on those spins being +1, which
// represents an infinite external field exactly.
struct IsingInstance {
  MultiGraph graph;
  double beta = 0.0;
  std::vector<double> fields;               // external field per vertex
  std::vector<std::uint8_t> plus_clamped;   // empty = none clamped

  std::uint32_t n() const { return graph.n; }
};

struct ExactSolution {
  double log_z = 0.0;
  double pressure = 0.0;                  // log_z / n
  std::vector<double> magnetization;      // <sigma_i>
  std::vector<double> edge_correlation;   // <sigma_u sigma_v> per edge
  double susceptibility = 0.0;            // (<S^2> - <S>^2)/n, S = sum sigma_i
};

// Ground truth by full enumeration over the free (non-clamped) spins;
// log-sum-exp with max shift.  Throws TooLarge above 24 vertices.
ExactSolution solve_exact(const IsingInstance& inst);

double susceptibility_exact(const IsingInstance& inst);

// Magnetization <sigma_j> of one vertex.
double magnetization_with_fields(const IsingInstance& inst, std::uint32_t j);

// Every first and second moment: mean[i] = <sigma_i>,
// pair[i*n + j] = <sigma_i sigma_j> (symmetric, diagonal 1).  Same
// enumeration as solve_exact; used by the correlation-inequality checks.
struct MomentTable {
  std::uint32_t n = 0;
  std::vector<double> mean;
  std::vector<double> pair;  // row-major n x n
  double pair_at(std::uint32_t i, std::uint32_t j) const {
    return pair[static_cast<std::size_t>(i) * n + j];
  }
};
MomentTable exact_moments(const IsingInstance& inst);

}  // namespace ising
