#include "ising/tree.hpp"

#include <algorithm>
#include <cmath>

#include "ising/errors.hpp"
#include "ising/fields.hpp"

namespace ising {

RootedTree sample_tree(const DegreeLaw& root_law, const DegreeLaw& offspring_law,
                       std::uint32_t levels, Rng& rng, std::size_t vertex_cap) {
  RootedTree t;
  t.levels = levels;
  t.parent.push_back(0);
  t.generation.push_back(0);
  t.gen_begin.assign(levels + 2, 0);
  t.gen_begin[1] = 1;
  std::size_t gen_start = 0, gen_end = 1;
  for (std::uint32_t g = 0; g < levels; ++g) {
    const DegreeLaw& law = (g == 0) ? root_law : offspring_law;
    for (std::size_t v = gen_start; v < gen_end; ++v) {
      const std::uint32_t k = law.sample_one(rng);
      if (t.parent.size() + k > vertex_cap)
        throw SizeExplosionError("sample_tree: vertex cap exceeded");
      for (std::uint32_t i = 0; i < k; ++i) {
        t.parent.push_back(static_cast<std::uint32_t>(v));
        t.generation.push_back(g + 1);
      }
    }
    gen_start = gen_end;
    gen_end = t.parent.size();
    t.gen_begin[g + 2] = gen_end;
  }
  t.field.assign(t.parent.size(), 0.0);
  return t;
}

std::vector<double> cavity_sweep_prefix(const RootedTree& t, double beta,
                                        Boundary bc, std::uint32_t boundary_gen) {
  if (!(beta >= 0.0)) throw Error("cavity_sweep: beta must be >= 0");
  if (boundary_gen > t.levels)
    throw Error("cavity_sweep: boundary generation beyond sampled depth");
  const std::size_t end = t.gen_begin[boundary_gen + 1];
  const double beta_hat = std::tanh(beta);
  std::vector<double> h(t.n(), 0.0);
  for (std::size_t v = 0; v < end; ++v)
    h[v] = (bc == Boundary::plus_bc && t.generation[v] == boundary_gen)
               ? kPlusInf
               : t.field[v];
  // reverse BFS order: every child is processed before its parent is read
  for (std::size_t v = end; v-- > 1;) {
    const double inc =
        std::isinf(h[v])
            ? beta
            : cavity_increment_capped(beta, beta_hat, std::tanh(h[v]));
    h[t.parent[v]] += inc;
  }
  return h;
}

std::vector<double> cavity_sweep(const RootedTree& t, double beta, Boundary bc) {
  return cavity_sweep_prefix(t, beta, bc, t.levels);
}

double root_magnetization(const RootedTree& t, double beta, Boundary bc,
                          std::uint32_t boundary_gen) {
  if (bc == Boundary::plus_bc && boundary_gen == 0) return 1.0;
  return tanh_field(cavity_sweep_prefix(t, beta, bc, boundary_gen)[0]);
}

MagnetizationProfile root_magnetization_profile(const RootedTree& t, double beta) {
  MagnetizationProfile prof;
  prof.free_m.reserve(t.levels + 1);
  prof.plus_m.reserve(t.levels + 1);
  for (std::uint32_t ell = 0; ell <= t.levels; ++ell) {
    prof.free_m.push_back(
        root_magnetization(t, beta, Boundary::free_bc, ell));
    prof.plus_m.push_back(
        root_magnetization(t, beta, Boundary::plus_bc, ell));
  }
  return prof;
}

BoundaryGapStats boundary_gap(const DegreeLaw& root_law,
                              const DegreeLaw& offspring_law, double beta,
                              double B, std::uint32_t ell_max,
                              std::size_t trees, Rng& rng) {
  if (!(B > 0.0)) throw Error("boundary_gap: B must be positive");
  constexpr double kSlack = 1e-12;
  BoundaryGapStats stats;
  stats.trees = trees;
  stats.mean_gap.assign(ell_max + 1, 0.0);
  stats.max_gap.assign(ell_max + 1, 0.0);
  stats.mean_free.assign(ell_max + 1, 0.0);
  stats.mean_plus.assign(ell_max + 1, 0.0);
  for (std::size_t i = 0; i < trees; ++i) {
    RootedTree t = sample_tree(root_law, offspring_law, ell_max, rng);
    t.field.assign(t.n(), B);
    MagnetizationProfile prof = root_magnetization_profile(t, beta);
    bool free_ok = true, plus_ok = true;
    for (std::uint32_t ell = 0; ell <= ell_max; ++ell) {
      const double gap = prof.plus_m[ell] - prof.free_m[ell];
      if (gap < -kSlack) stats.gap_negative += 1;
      stats.mean_gap[ell] += gap;
      stats.max_gap[ell] = std::max(stats.max_gap[ell], gap);
      stats.mean_free[ell] += prof.free_m[ell];
      stats.mean_plus[ell] += prof.plus_m[ell];
      if (ell >= 1) {
        stats.max_ell_times_gap =
            std::max(stats.max_ell_times_gap, static_cast<double>(ell) * gap);
        if (prof.free_m[ell] < prof.free_m[ell - 1] - kSlack) free_ok = false;
        if (prof.plus_m[ell] > prof.plus_m[ell - 1] + kSlack) plus_ok = false;
      }
    }
    if (!free_ok) stats.free_not_nondecreasing += 1;
    if (!plus_ok) stats.plus_not_nonincreasing += 1;
  }
  for (std::uint32_t ell = 0; ell <= ell_max; ++ell) {
    stats.mean_gap[ell] /= static_cast<double>(trees);
    stats.mean_free[ell] /= static_cast<double>(trees);
    stats.mean_plus[ell] /= static_cast<double>(trees);
  }
  return stats;
}

double joined_tree_correlation(const DegreeLaw& offspring_law, double beta,
                               double B, std::uint32_t t, Rng& rng, Boundary bc) {
  if (!(B > 0.0)) throw Error("joined_tree_correlation: B must be positive");
  const double beta_hat = std::tanh(beta);
  double x[2];
  for (int side = 0; side < 2; ++side) {
    RootedTree tree = sample_tree(offspring_law, offspring_law, t, rng);
    tree.field.assign(tree.n(), B);
    x[side] = (bc == Boundary::plus_bc && t == 0)
                  ? 1.0
                  : tanh_field(cavity_sweep(tree, beta, bc)[0]);
  }
  return edge_correlation(beta_hat, x[0], x[1]);
}

double boundary_gap_constant(double beta_max, double B_min) {
  if (!(beta_max > 0.0) || !(B_min > 0.0))
    throw Error("boundary_gap_constant: need beta_max > 0 and B_min > 0");
  const double tb = std::tanh(B_min);
  double best = 1.0 / tb;  // the beta -> 0 limit of beta / xi(beta, B_min)
  const int grid = 4096;
  for (int i = 1; i <= grid; ++i) {
    const double b = beta_max * static_cast<double>(i) / grid;
    const double xi = std::atanh(std::tanh(b) * tb);
    best = std::max(best, b / xi);
  }
  return best;
}

}  // namespace ising
