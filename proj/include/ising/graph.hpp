#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ising/degree_law.hpp"
#include "ising/rng.hpp"

namespace ising {

// Undirected multigraph: self-loops and parallel edges allowed.  Immutable
// after construction; adjacency is CSR with each loop listing its endpoint
// twice, so neighbor-list lengths equal degrees (a loop contributes 2).
struct MultiGraph {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u <= v
  std::vector<std::uint32_t> degree;
  std::vector<std::size_t> adj_offset;  // n+1 entries
  std::vector<std::uint32_t> adj;
  std::size_t loops = 0;

  static MultiGraph from_edges(
      std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj.data() + adj_offset[v], adj_offset[v + 1] - adj_offset[v]};
  }
  std::size_t num_edges() const { return edges.size(); }
};

// Uniform stub matching on the given degree sequence.  If the total degree
// is odd, the last vertex's degree is incremented by one first.
MultiGraph configuration_model(std::vector<std::uint32_t> degrees, Rng& rng);

// Convenience overload: i.i.d. degrees from a law, then stub matching.
MultiGraph configuration_model(const DegreeLaw& law, std::uint32_t n, Rng& rng);

// G(n, p) with p = mean_degree / (n-1), sampled by geometric skipping.
MultiGraph erdos_renyi(std::uint32_t n, double mean_degree, Rng& rng);

// (1/n) * sum_i D_i * 1{D_i >= ell}: the high-degree share of total degree.
// Non-increasing in ell; ell = 0 gives 2|E|/n.
double sparsity_profile(const MultiGraph& g, std::uint32_t ell);

// |E|/n.
double edge_density(const MultiGraph& g);

// AHU canonical string of a rooted tree.  parent[v] < v required for v >= 1
// (BFS or DFS order); parent[0] is ignored.  Equal strings iff the rooted
// trees are isomorphic.
std::string rooted_tree_code(std::span<const std::uint32_t> parent);

// Radius-t neighborhood of a vertex: the subgraph induced by vertices at
// distance <= t, explored by BFS.
struct NeighborhoodBall {
  std::uint32_t center = 0;
  std::uint32_t radius = 0;
  bool is_tree = false;          // induced subgraph acyclic (it is connected)
  std::uint32_t vertex_count = 0;
  std::size_t induced_edges = 0;  // multi-edges counted with multiplicity
  std::vector<std::uint32_t> generation_sizes;  // index = distance from center
  // BFS spanning structure (original vertex ids + parent indices into order)
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> parent;            // parent[0] == 0
  std::string canonical_code;                   // empty when !is_tree
};

NeighborhoodBall sample_ball(const MultiGraph& g, std::uint32_t center,
                             std::uint32_t t);

// Empirical law of radius-t neighborhoods over uniformly sampled centers:
// frequencies of canonical tree shapes plus the fraction of non-tree balls.
struct LocalLaw {
  std::map<std::string, double> shape_freq;
  double non_tree_fraction = 0.0;
  std::size_t samples = 0;
};

LocalLaw local_law_estimate(const MultiGraph& g, std::uint32_t t,
                            std::size_t samples, Rng& rng);

}  // namespace ising
