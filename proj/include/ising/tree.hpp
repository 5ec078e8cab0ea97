#pragma once

#include <cstdint>
#include <vector>

#include "ising/degree_law.hpp"
#include "ising/rng.hpp"

namespace ising {

// Branching-process tree in BFS layout: vertex 0 is the root, vertices are
// grouped by generation, and parent[v] < v.  `levels` is the generation
// count it was sampled with; the last generation may be empty if every
// lineage died out earlier.
struct RootedTree {
  std::vector<std::uint32_t> parent;      // parent[0] == 0
  std::vector<std::uint32_t> generation;  // generation[0] == 0
  std::vector<double> field;              // external field per vertex
  std::uint32_t levels = 0;
  std::vector<std::size_t> gen_begin;     // levels+2 entries; generation g
                                          // occupies [gen_begin[g], gen_begin[g+1])

  std::uint32_t n() const { return static_cast<std::uint32_t>(parent.size()); }
};

enum class Boundary { free_bc, plus_bc };

// Root offspring from root_law, later generations i.i.d. from offspring_law,
// generation `levels` are leaves.  Fields are initialized to zero.  Throws
// SizeExplosion when the vertex count would exceed vertex_cap.
RootedTree sample_tree(const DegreeLaw& root_law, const DegreeLaw& offspring_law,
                       std::uint32_t levels, Rng& rng,
                       std::size_t vertex_cap = 10'000'000);

// Leaf-to-root cavity recursion (iterative, reverse-BFS order):
//   h_v = B_v + sum_children atanh(tanh(beta) tanh(h_child)).
// Under plus boundary conditions the generation-`boundary_gen` vertices are
// clamped to +1: their h is the +inf sentinel and they contribute exactly
// beta to their parent.  Returns the per-vertex cavity fields for the
// subtree prefix of generations 0..boundary_gen (entries beyond it are 0).
std::vector<double> cavity_sweep_prefix(const RootedTree& t, double beta,
                                        Boundary bc, std::uint32_t boundary_gen);

// Same with the boundary at the sampled depth (the usual case).
std::vector<double> cavity_sweep(const RootedTree& t, double beta, Boundary bc);

// Root magnetization tanh(h_root); exactly 1 when the root itself is clamped
// (plus boundary with boundary_gen == 0).
double root_magnetization(const RootedTree& t, double beta, Boundary bc,
                          std::uint32_t boundary_gen);

// Root magnetizations of all nested truncations ell = 0..t.levels of one
// tree, under both boundary conditions.
struct MagnetizationProfile {
  std::vector<double> free_m;
  std::vector<double> plus_m;
};
MagnetizationProfile root_magnetization_profile(const RootedTree& t, double beta);

// Monte Carlo over sampled trees with uniform field B: per-depth statistics
// of the boundary-condition gap m^{ell,+} - m^{ell,f}.
struct BoundaryGapStats {
  std::vector<double> mean_gap, max_gap;     // indexed by ell = 0..ell_max
  std::vector<double> mean_free, mean_plus;
  std::size_t trees = 0;
  // per-tree violations beyond 1e-12 slack (should stay 0):
  std::size_t gap_negative = 0;         // gap < 0 anywhere
  std::size_t free_not_nondecreasing = 0;
  std::size_t plus_not_nonincreasing = 0;
  double max_ell_times_gap = 0.0;       // max over trees and ell of ell*gap
};
BoundaryGapStats boundary_gap(const DegreeLaw& root_law,
                              const DegreeLaw& offspring_law, double beta,
                              double B, std::uint32_t ell_max,
                              std::size_t trees, Rng& rng);

// Correlation <sigma_r1 sigma_r2> across the edge joining the roots of two
// independent offspring-law trees of depth t (uniform field B), one sample.
double joined_tree_correlation(const DegreeLaw& offspring_law, double beta,
                               double B, std::uint32_t t, Rng& rng, Boundary bc);

// Explicit constant from the boundary-gap bound: sup over 0 < b <= beta of
// b / atanh(tanh(b) tanh(B_min)); finite for B_min > 0.
double boundary_gap_constant(double beta_max, double B_min);

}  // namespace ising
