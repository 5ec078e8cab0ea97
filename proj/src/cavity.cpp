#include "ising/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "ising/fields.hpp"

namespace ising {

FieldPopulation make_population(std::size_t n, double beta, double B,
                                Boundary start) {
  if (n < 1) throw Error("make_population: empty pool");
  FieldPopulation pop;
  pop.beta = beta;
  pop.B = B;
  pop.samples.assign(n, start == Boundary::plus_bc ? kPlusInf : B);
  return pop;
}

FieldPopulation iterate(const FieldPopulation& pop,
                        const DegreeLaw& offspring_law, Rng& rng) {
  const std::size_t n = pop.size();
  if (n < 1) throw Error("iterate: empty pool");
  const double beta_hat = std::tanh(pop.beta);
  FieldPopulation next;
  next.beta = pop.beta;
  next.B = pop.B;
  next.iteration = pop.iteration + 1;
  next.samples.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::uint32_t k = offspring_law.sample_one(rng);
    double h = pop.B;
    for (std::uint32_t i = 0; i < k; ++i) {
      const double child = pop.samples[rng.below(n)];
      h += std::isinf(child)
               ? pop.beta
               : cavity_increment_capped(pop.beta, beta_hat, std::tanh(child));
    }
    next.samples[s] = h;
  }
  return next;
}

FixedPointResult solve(const DegreeLaw& offspring_law, double beta, double B,
                       const SolveOptions& opts, Rng& rng) {
  if (!(B > 0.0)) throw Error("solve: B must be positive");
  if (opts.pool_size < 1) throw Error("solve: empty pool");
  const std::size_t n = opts.pool_size;
  const double beta_hat = std::tanh(beta);

  FieldPopulation free_pop = make_population(n, beta, B, Boundary::free_bc);
  FieldPopulation plus_pop = make_population(n, beta, B, Boundary::plus_bc);
  std::vector<double> free_next(n), plus_next(n);

  // Frozen structure: the same offspring counts and resampling indices are
  // regenerated each iteration from this fixed substream (storing them for
  // heavy-tailed laws would cost mean(offspring) * pool_size memory).
  const Rng structure_master = Rng::stream(rng(), 0x5eedu);

  auto tanh_mean = [](const std::vector<double>& v) {
    MeanVar acc;
    for (double h : v) acc.add(tanh_field(h));
    return acc.mean();
  };

  FixedPointResult res;
  std::vector<double> scratch;
  auto record_quantiles = [&](const std::vector<double>& v) {
    if (opts.track_quantiles.empty()) return;
    scratch = v;
    std::sort(scratch.begin(), scratch.end());
    std::vector<double> row;
    for (double q : opts.track_quantiles) {
      const auto idx = static_cast<std::size_t>(
          q * static_cast<double>(scratch.size() - 1));
      row.push_back(scratch[std::min(idx, scratch.size() - 1)]);
    }
    res.quantile_history.push_back(std::move(row));
  };

  double prev_free_mean = tanh_mean(free_pop.samples);
  res.bracket_gap = tanh_mean(plus_pop.samples) - prev_free_mean;
  record_quantiles(free_pop.samples);
  std::uint32_t t = 0;
  while (t < opts.t_max && res.bracket_gap > opts.tol) {
    Rng structure = structure_master;  // identical draws every iteration
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint32_t k = offspring_law.sample_one(structure);
      double hf = B, hp = B;
      for (std::uint32_t i = 0; i < k; ++i) {
        const std::size_t j = static_cast<std::size_t>(structure.below(n));
        const double cf = free_pop.samples[j];
        const double cp = plus_pop.samples[j];
        hf += std::isinf(cf) ? beta
                           : cavity_increment_capped(beta, beta_hat, std::tanh(cf));
        hp += std::isinf(cp) ? beta
                           : cavity_increment_capped(beta, beta_hat, std::tanh(cp));
      }
      free_next[s] = hf;
      plus_next[s] = hp;
      if (hf > hp) res.order_violations += 1;
    }
    free_pop.samples.swap(free_next);
    plus_pop.samples.swap(plus_next);
    t += 1;
    free_pop.iteration = plus_pop.iteration = t;

    // pointwise order free <= plus makes these means exact W1 distances
    const double free_mean = tanh_mean(free_pop.samples);
    const double plus_mean = tanh_mean(plus_pop.samples);
    res.w1_residual = free_mean - prev_free_mean;
    res.bracket_gap = plus_mean - free_mean;
    prev_free_mean = free_mean;
    record_quantiles(free_pop.samples);
  }
  res.iterations = t;
  res.converged = res.bracket_gap <= opts.tol;
  res.population = std::move(free_pop);
  res.plus_population = std::move(plus_pop);
  return res;
}

NotConvergedError::NotConvergedError(FixedPointResult r)
    : Error("cavity solve: not converged within t_max (bracket gap " +
            std::to_string(r.bracket_gap) + ")"),
      result(std::move(r)) {}

FixedPointResult solve_checked(const DegreeLaw& offspring_law, double beta,
                               double B, const SolveOptions& opts, Rng& rng) {
  FixedPointResult res = solve(offspring_law, beta, B, opts, rng);
  if (!res.converged) throw NotConvergedError(std::move(res));
  return res;
}

double scalar_bethe_fixed_point(std::uint32_t k_minus_1, double beta, double B,
                                double tol) {
  if (!(B >= 0.0)) throw Error("scalar_bethe_fixed_point: B must be >= 0");
  const double beta_hat = std::tanh(beta);
  const double k = static_cast<double>(k_minus_1);
  double h = B;
  for (std::size_t it = 0; it < 100'000'000; ++it) {
    const double next = B + k * cavity_increment(beta_hat, std::tanh(h));
    if (std::abs(next - h) <= tol) return next;
    h = next;
  }
  return h;
}

double w1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw SizeMismatchError("w1_distance: pools must have equal size");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  MeanVar acc;
  for (std::size_t i = 0; i < sa.size(); ++i) acc.add(std::abs(sa[i] - sb[i]));
  return acc.mean();
}

IdentityCheck fixed_point_identity_check(const FieldPopulation& pop,
                                         const DegreeLaw& root_law,
                                         const DegreeLaw& offspring_law,
                                         std::size_t samples, Rng& rng) {
  (void)offspring_law;  // the root law fixes L; rho enters through the pool
  const std::size_t n = pop.size();
  if (n < 1) throw Error("fixed_point_identity_check: empty pool");
  const double beta_hat = std::tanh(pop.beta);
  const double p_mean = root_law.mean();
  auto draw_x = [&]() { return tanh_field(pop.samples[rng.below(n)]); };
  auto psi = [&](double x, double y) {
    return x * y / (1.0 + beta_hat * x * y);
  };
  MeanVar lhs_acc, rhs_acc, diff_acc;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x1 = draw_x();
    const std::uint32_t ell = root_law.sample_one(rng);
    double lhs = 0.0;
    if (ell >= 1) {
      double arg = pop.B;
      for (std::uint32_t j = 1; j < ell; ++j)
        arg += cavity_increment(beta_hat, draw_x());
      lhs = static_cast<double>(ell) * psi(x1, std::tanh(arg));
    }
    const double rhs = p_mean * psi(x1, draw_x());
    lhs_acc.add(lhs);
    rhs_acc.add(rhs);
    diff_acc.add(lhs - rhs);
  }
  return {to_estimate(lhs_acc), to_estimate(rhs_acc), to_estimate(diff_acc)};
}

}  // namespace ising
