#include "ising/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ising/errors.hpp"

namespace ising {

namespace {

struct Layout {
  std::vector<std::uint32_t> free_vertex;   // enumeration order
  std::vector<std::int8_t> sigma;           // current configuration
  double clamp_energy_const = 0.0;          // beta * loops (sigma^2 = 1)
};

Layout make_layout(const IsingInstance& inst) {
  const std::uint32_t n = inst.n();
  if (n > 24) throw TooLargeError("solve_exact: more than 24 vertices");
  if (inst.fields.size() != n)
    throw SizeMismatchError("solve_exact: fields size != vertex count");
  if (!inst.plus_clamped.empty() && inst.plus_clamped.size() != n)
    throw SizeMismatchError("solve_exact: clamp mask size != vertex count");
  if (!(inst.beta >= 0.0))
    throw Error("solve_exact: beta must be >= 0 (ferromagnet)");
  Layout lay;
  lay.sigma.assign(n, +1);
  for (std::uint32_t v = 0; v < n; ++v) {
    bool clamped = !inst.plus_clamped.empty() && inst.plus_clamped[v];
    if (!clamped) lay.free_vertex.push_back(v);
  }
  lay.clamp_energy_const =
      inst.beta * static_cast<double>(inst.graph.loops);
  return lay;
}

// Energy of the current configuration: beta * sum_edges sigma_u sigma_v
// (loops as constants) + sum_i B_i sigma_i.  Recomputed from scratch per
// configuration so no roundoff drift accumulates across the enumeration.
double energy(const IsingInstance& inst, const std::vector<std::int8_t>& sigma,
              double loop_const) {
  double e_edges = 0.0;
  for (auto [u, v] : inst.graph.edges) {
    if (u == v) continue;
    e_edges += static_cast<double>(sigma[u] * sigma[v]);
  }
  double e_fields = 0.0;
  for (std::uint32_t i = 0; i < inst.n(); ++i)
    e_fields += inst.fields[i] * static_cast<double>(sigma[i]);
  return inst.beta * e_edges + loop_const + e_fields;
}

}  // namespace

ExactSolution solve_exact(const IsingInstance& inst) {
  Layout lay = make_layout(inst);
  const std::uint32_t n = inst.n();
  const std::size_t f = lay.free_vertex.size();
  const std::uint64_t configs = std::uint64_t{1} << f;

  auto load_config = [&](std::uint64_t c) {
    for (std::size_t b = 0; b < f; ++b)
      lay.sigma[lay.free_vertex[b]] = ((c >> b) & 1u) ? +1 : -1;
  };

  // pass 1: max energy for the log-sum-exp shift
  double e_max = -std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < configs; ++c) {
    load_config(c);
    e_max = std::max(e_max, energy(inst, lay.sigma, lay.clamp_energy_const));
  }

  // pass 2: weighted accumulation
  double z = 0.0, zc = 0.0;
  std::vector<double> mag(n, 0.0);
  std::vector<double> corr(inst.graph.num_edges(), 0.0);
  double s1 = 0.0, s2 = 0.0;
  for (std::uint64_t c = 0; c < configs; ++c) {
    load_config(c);
    const double w =
        std::exp(energy(inst, lay.sigma, lay.clamp_energy_const) - e_max);
    double y = w - zc;
    double t = z + y;
    zc = (t - z) - y;
    z = t;
    double spin_sum = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      mag[i] += w * static_cast<double>(lay.sigma[i]);
      spin_sum += static_cast<double>(lay.sigma[i]);
    }
    s1 += w * spin_sum;
    s2 += w * spin_sum * spin_sum;
    for (std::size_t e = 0; e < inst.graph.edges.size(); ++e) {
      auto [u, v] = inst.graph.edges[e];
      corr[e] += w * static_cast<double>(lay.sigma[u] * lay.sigma[v]);
    }
  }

  ExactSolution sol;
  sol.log_z = e_max + std::log(z);
  sol.pressure = sol.log_z / static_cast<double>(n);
  sol.magnetization.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) sol.magnetization[i] = mag[i] / z;
  sol.edge_correlation.resize(corr.size());
  for (std::size_t e = 0; e < corr.size(); ++e)
    sol.edge_correlation[e] = corr[e] / z;
  const double mean_s = s1 / z;
  sol.susceptibility = (s2 / z - mean_s * mean_s) / static_cast<double>(n);
  return sol;
}

double susceptibility_exact(const IsingInstance& inst) {
  return solve_exact(inst).susceptibility;
}

double magnetization_with_fields(const IsingInstance& inst, std::uint32_t j) {
  if (j >= inst.n()) throw Error("magnetization_with_fields: vertex out of range");
  return solve_exact(inst).magnetization[j];
}

MomentTable exact_moments(const IsingInstance& inst) {
  Layout lay = make_layout(inst);
  const std::uint32_t n = inst.n();
  const std::size_t f = lay.free_vertex.size();
  const std::uint64_t configs = std::uint64_t{1} << f;

  auto load_config = [&](std::uint64_t c) {
    for (std::size_t b = 0; b < f; ++b)
      lay.sigma[lay.free_vertex[b]] = ((c >> b) & 1u) ? +1 : -1;
  };

  double e_max = -std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < configs; ++c) {
    load_config(c);
    e_max = std::max(e_max, energy(inst, lay.sigma, lay.clamp_energy_const));
  }

  double z = 0.0;
  std::vector<double> first(n, 0.0);
  std::vector<double> second(static_cast<std::size_t>(n) * n, 0.0);
  for (std::uint64_t c = 0; c < configs; ++c) {
    load_config(c);
    const double w =
        std::exp(energy(inst, lay.sigma, lay.clamp_energy_const) - e_max);
    z += w;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double si = static_cast<double>(lay.sigma[i]);
      first[i] += w * si;
      for (std::uint32_t j = i; j < n; ++j)
        second[static_cast<std::size_t>(i) * n + j] +=
            w * si * static_cast<double>(lay.sigma[j]);
    }
  }

  MomentTable out;
  out.n = n;
  out.mean.resize(n);
  out.pair.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    out.mean[i] = first[i] / z;
    for (std::uint32_t j = i; j < n; ++j) {
      const double v = second[static_cast<std::size_t>(i) * n + j] / z;
      out.pair[static_cast<std::size_t>(i) * n + j] = v;
      out.pair[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return out;
}

}  // namespace ising
