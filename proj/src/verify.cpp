#include "ising/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ising/cavity.hpp"
#include "ising/degree_law.hpp"
#include "ising/graph.hpp"
#include "ising/tree.hpp"

namespace ising {

namespace {

// Track the largest violation and where it happened.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::string where;
  void offer(double v, const std::string& w) {
    if (v > value) {
      value = v;
      where = w;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace

IsingInstance random_small_instance(std::uint32_t max_n, Rng& rng) {
  const std::uint32_t span = max_n < 3 ? 1 : max_n - 1;
  const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(span));
  IsingInstance inst;
  if (rng.bernoulli(0.5)) {
    inst.graph = erdos_renyi(n, std::min(2.5, n - 1.0), rng);
  } else {
    // i.i.d. degrees in {1,2,3}: stub matching produces loops and
    // parallel edges, which the checks must survive too
    std::vector<std::uint32_t> deg(n);
    for (auto& d : deg) d = 1 + static_cast<std::uint32_t>(rng.below(3));
    inst.graph = configuration_model(std::move(deg), rng);
  }
  inst.beta = 1.5 * rng.uniform();
  inst.fields.resize(n);
  for (auto& b : inst.fields) b = rng.bernoulli(0.3) ? 0.0 : rng.uniform();
  return inst;
}

SuiteReport gks_suite(const VerifyOptions& opt, Rng& rng) {
  SuiteReport rep;
  rep.name = "griffiths-correlations";
  Worst worst;
  for (std::size_t t = 0; t < opt.instances; ++t) {
    const IsingInstance inst = random_small_instance(opt.max_n, rng);
    const MomentTable m = exact_moments(inst);
    for (std::uint32_t i = 0; i < m.n; ++i) {
      rep.checks += 1;
      const double v1 = -m.mean[i];  // <sigma_i> >= 0
      if (v1 > opt.gks_tol) rep.failures += 1;
      worst.offer(v1, "mean, instance " + std::to_string(t));
      for (std::uint32_t j = i + 1; j < m.n; ++j) {
        rep.checks += 2;
        const double v2 = -m.pair_at(i, j);  // <sigma_i sigma_j> >= 0
        const double v3 =
            m.mean[i] * m.mean[j] - m.pair_at(i, j);  // covariance >= 0
        if (v2 > opt.gks_tol) rep.failures += 1;
        if (v3 > opt.gks_tol) rep.failures += 1;
        worst.offer(v2, "pair, instance " + std::to_string(t));
        worst.offer(v3, "covariance, instance " + std::to_string(t));
      }
    }

    // Second inequality: growing any coupling or field cannot decrease any
    // first or second moment.  Three perturbations per instance.
    const auto monotone_under = [&](const IsingInstance& stronger,
                                    const char* what) {
      const MomentTable hi = exact_moments(stronger);
      for (std::uint32_t i = 0; i < m.n; ++i) {
        rep.checks += 1;
        const double vm = m.mean[i] - hi.mean[i];
        if (vm > opt.gks_tol) rep.failures += 1;
        worst.offer(vm, std::string(what) + " mean, instance " +
                            std::to_string(t));
        for (std::uint32_t j = i + 1; j < m.n; ++j) {
          rep.checks += 1;
          const double vp = m.pair_at(i, j) - hi.pair_at(i, j);
          if (vp > opt.gks_tol) rep.failures += 1;
          worst.offer(vp, std::string(what) + " pair, instance " +
                              std::to_string(t));
        }
      }
    };
    IsingInstance hotter = inst;
    hotter.beta += 0.25;
    monotone_under(hotter, "beta increase");
    IsingInstance pushed = inst;
    pushed.fields[rng.below(inst.n())] += 0.5;
    monotone_under(pushed, "field increase");
    if (inst.n() >= 2) {
      std::uint32_t u = static_cast<std::uint32_t>(rng.below(inst.n()));
      std::uint32_t v = static_cast<std::uint32_t>(rng.below(inst.n()));
      if (u == v) v = (v + 1) % inst.n();
      IsingInstance wired = inst;
      auto edges = inst.graph.edges;
      edges.emplace_back(std::min(u, v), std::max(u, v));
      wired.graph = MultiGraph::from_edges(inst.n(), std::move(edges));
      monotone_under(wired, "edge added");
    }
  }
  rep.worst = worst.value;
  rep.detail = "largest violation " + fmt(worst.value) + " (" + worst.where +
               "), tolerance " + fmt(opt.gks_tol);
  return rep;
}

SuiteReport ghs_suite(const VerifyOptions& opt, Rng& rng,
                      const MagnetizationFn& magnetization_of) {
  SuiteReport rep;
  rep.name = "field-concavity";
  Worst worst;
  const double delta = 0.05;
  for (std::size_t t = 0; t < opt.instances; ++t) {
    const IsingInstance inst = random_small_instance(opt.max_n, rng);
    const double shift = delta + rng.uniform();  // keep B - delta >= 0
    const double d2 = magnetization_of(inst, shift + delta) -
                      2.0 * magnetization_of(inst, shift) +
                      magnetization_of(inst, shift - delta);
    rep.checks += 1;
    if (d2 > opt.ghs_tol) rep.failures += 1;  // concave: d2 <= 0
    worst.offer(d2, "instance " + std::to_string(t) + ", shift " + fmt(shift));
  }
  rep.worst = worst.value;
  rep.detail = "largest second difference " + fmt(worst.value) +
               " (should be <= 0; " + worst.where + "), tolerance " +
               fmt(opt.ghs_tol);
  return rep;
}

SuiteReport ghs_suite(const VerifyOptions& opt, Rng& rng) {
  return ghs_suite(opt, rng, [](const IsingInstance& inst, double shift) {
    IsingInstance shifted = inst;
    for (auto& b : shifted.fields) b += shift;
    const ExactSolution sol = solve_exact(shifted);
    double m = 0.0;
    for (double mi : sol.magnetization) m += mi;
    return m / static_cast<double>(inst.n());
  });
}

SuiteReport boundary_gap_suite(const VerifyOptions& opt, Rng& rng) {
  SuiteReport rep;
  rep.name = "boundary-gap";
  Worst worst;
  const double beta = 0.8, B = 0.2;
  const double bound = boundary_gap_constant(beta, B);

  struct Config {
    DegreeLaw root;
    DegreeLaw offspring;
    std::uint32_t ell_max;
  };
  const DegreeLaw pois = DegreeLaw::poisson(2.0);
  const std::vector<Config> configs = {
      {DegreeLaw::regular(3), DegreeLaw::regular(2), 12},
      {pois, size_biased(pois), 10},
  };
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto& cfg = configs[c];
    const BoundaryGapStats st = boundary_gap(cfg.root, cfg.offspring, beta, B,
                                             cfg.ell_max, opt.trees, rng);
    const std::string tag = "law " + std::to_string(c);
    rep.checks += 4;
    if (st.gap_negative > 0) rep.failures += 1;
    if (st.free_not_nondecreasing > 0) rep.failures += 1;
    if (st.plus_not_nonincreasing > 0) rep.failures += 1;
    const double excess = st.max_ell_times_gap - bound;
    if (excess > 0.0) rep.failures += 1;
    if (st.gap_negative > 0)
      worst.offer(static_cast<double>(st.gap_negative), tag + " negative gaps");
    worst.offer(excess, tag + " depth*gap " + fmt(st.max_ell_times_gap) +
                            " vs bound " + fmt(bound));
  }
  rep.worst = worst.value;
  rep.detail = "worst margin " + fmt(worst.value) + " (" + worst.where + ")";
  return rep;
}

SuiteReport bracket_collapse_suite(const VerifyOptions& opt, Rng& rng) {
  SuiteReport rep;
  rep.name = "bracket-collapse";
  Worst worst;
  const double beta = 0.8, B = 0.2;

  const std::vector<DegreeLaw> offspring = {
      DegreeLaw::regular(2),
      size_biased(DegreeLaw::power_law(2.5, 1, 10000)),
  };
  for (std::size_t c = 0; c < offspring.size(); ++c) {
    SolveOptions sopt;
    sopt.pool_size = opt.pool_size;
    sopt.tol = opt.bracket_tol;
    sopt.track_quantiles = {0.1, 0.25, 0.5, 0.75, 0.9};
    const FixedPointResult res = solve(offspring[c], beta, B, sopt, rng);
    const std::string tag = "law " + std::to_string(c);

    rep.checks += 4;
    if (!res.converged) rep.failures += 1;
    const double gap_excess = res.bracket_gap - sopt.tol;
    if (gap_excess > 0.0) rep.failures += 1;
    if (res.order_violations > 0) rep.failures += 1;
    worst.offer(gap_excess, tag + " bracket gap " + fmt(res.bracket_gap));
    if (res.order_violations > 0)
      worst.offer(static_cast<double>(res.order_violations),
                  tag + " pointwise order violations");

    // each tracked free-pool order statistic must be nondecreasing in t
    bool monotone = true;
    double drop = 0.0;
    for (std::size_t q = 0; q < sopt.track_quantiles.size(); ++q)
      for (std::size_t t = 1; t < res.quantile_history.size(); ++t) {
        const double d =
            res.quantile_history[t - 1][q] - res.quantile_history[t][q];
        if (d > 0.0) monotone = false;
        drop = std::max(drop, d);
      }
    if (!monotone) rep.failures += 1;
    worst.offer(drop, tag + " largest quantile decrease");
  }
  rep.worst = worst.value;
  rep.detail = "worst margin " + fmt(worst.value) + " (" + worst.where + ")";
  return rep;
}

std::vector<SuiteReport> run_verification(const VerifyOptions& opt, Rng& rng) {
  std::vector<SuiteReport> out;
  out.push_back(gks_suite(opt, rng));
  out.push_back(ghs_suite(opt, rng));
  out.push_back(boundary_gap_suite(opt, rng));
  out.push_back(bracket_collapse_suite(opt, rng));
  return out;
}

}  // namespace ising
