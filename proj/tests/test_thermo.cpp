#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <doctest.h>

#include "ising/cavity.hpp"
#include "ising/degree_law.hpp"
#include "ising/errors.hpp"
#include "ising/rng.hpp"
#include "ising/stats.hpp"
#include "ising/thermo.hpp"

using namespace ising;

namespace {

FieldPopulation pool_at(std::size_t n, double value, double beta, double B) {
  FieldPopulation pop;
  pop.samples.assign(n, value);
  pop.beta = beta;
  pop.B = B;
  return pop;
}

double log_2cosh(double x) { return std::log(2.0 * std::cosh(x)); }

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("pressure at zero coupling is the free-spin value") {
  Rng rng(1);
  const DegreeLaw root = DegreeLaw::poisson(3.0);
  for (double B : {0.1, 0.5, 1.0}) {
    const FieldPopulation pop = pool_at(2000, B, 0.0, B);
    const Estimate phi = pressure(pop, root, 0.0, B, 5000, rng);
    CHECK(std::abs(phi.value - log_2cosh(B)) <= 1e-12);
    CHECK(phi.se <= 1e-12);
  }
}

TEST_CASE("magnetization limits") {
  Rng rng(2);
  const DegreeLaw root = DegreeLaw::poisson(2.0);
  const FieldPopulation indep = pool_at(2000, 0.45, 0.0, 0.45);
  const Estimate m0 = magnetization(indep, root, 0.0, 0.45, 5000, rng);
  CHECK(m0.value == doctest::Approx(std::tanh(0.45)).epsilon(1e-13));

  // deep in the saturated regime every sample is fully polarized
  const FieldPopulation strong = pool_at(2000, 30.0, 0.5, 30.0);
  const Estimate m1 = magnetization(strong, root, 0.5, 30.0, 5000, rng);
  CHECK(std::abs(m1.value - 1.0) <= 1e-10);
}

TEST_CASE("internal energy limits") {
  Rng rng(3);
  const double B = 0.45;
  const FieldPopulation indep = pool_at(2000, B, 0.0, B);
  const Estimate u0 = internal_energy(indep, 3.0, 0.0, 20000, rng);
  CHECK(std::abs(u0.value + 1.5 * std::tanh(B) * std::tanh(B)) <= 1e-12);

  const FieldPopulation strong = pool_at(2000, 35.0, 30.0, 0.5);
  const Estimate u1 = internal_energy(strong, 3.0, 30.0, 20000, rng);
  CHECK(std::abs(u1.value + 1.5) <= 1e-6);
}

TEST_CASE("susceptibility from a magnetization sweep") {
  const std::vector<double> Bs = {0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<Estimate> Ms;
  for (double b : Bs) Ms.push_back({std::tanh(b), 1e-9});
  const auto chis = susceptibility_from_sweep(Bs, Ms, 1e-3);
  REQUIRE(chis.size() == 3);
  for (std::size_t i = 0; i < chis.size(); ++i) {
    CHECK(chis[i].x == doctest::Approx(Bs[i + 1]).epsilon(1e-15));
    const double sech2 = 1.0 - std::tanh(chis[i].x) * std::tanh(chis[i].x);
    CHECK(std::abs(chis[i].value - sech2) <= 4e-3);  // h^2 truncation
    CHECK(chis[i].se ==
          doctest::Approx(std::sqrt(2.0) * 1e-9 / 0.2).epsilon(1e-6));
  }

  std::vector<Estimate> noisy = Ms;
  for (auto& m : noisy) m.se = 0.5;
  CHECK_THROWS_AS(susceptibility_from_sweep(Bs, noisy, 1.0), StepTooSmallError);
  const std::vector<double> two = {0.1, 0.2};
  std::vector<Estimate> twoM = {Ms[0], Ms[1]};
  CHECK_THROWS_AS(susceptibility_from_sweep(two, twoM, 1.0), Error);
}

TEST_CASE("specific heat from the chain energy curve") {
  // 1-D closed form U(beta) = -tanh(beta), so C = beta^2 sech^2(beta)
  std::vector<double> betas;
  std::vector<Estimate> Us;
  for (int i = 0; i <= 40; ++i) {
    const double b = 0.2 + 0.02 * i;
    betas.push_back(b);
    Us.push_back({-std::tanh(b), 1e-9});
  }
  const auto cs = specific_heat_from_sweep(betas, Us, 1e-3);
  REQUIRE(cs.size() == betas.size() - 2);
  for (const auto& c : cs) {
    const double sech2 = 1.0 - std::tanh(c.x) * std::tanh(c.x);
    CHECK(std::abs(c.value - c.x * c.x * sech2) <= 1e-3);
  }
}

TEST_CASE("critical temperature of the size-biased mean") {
  CHECK(critical_beta(2.0) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  CHECK(std::isinf(critical_beta(1.0)));
  CHECK(std::isinf(critical_beta(0.5)));
  CHECK(critical_beta(1e6) == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK_THROWS_AS(critical_beta(0.0), Error);
}

TEST_CASE("regular-tree closed forms are self-consistent") {
  const double beta = 0.8, B = 0.2;
  const BethePoint p = bethe_regular_point(3, beta, B);
  CHECK(p.h == doctest::Approx(scalar_bethe_fixed_point(2, beta, B)).epsilon(1e-13));
  CHECK(p.M >= 0.0);
  CHECK(p.M <= 1.0);
  CHECK(p.U <= 0.0);

  // frozen regression anchors for this parameter point
  CHECK(p.phi == doctest::Approx(1.406959290267446).epsilon(1e-12));
  CHECK(p.M == doctest::Approx(0.9820750916075578).epsilon(1e-12));

  // Slope consistency between the closed forms themselves:
  // M = d phi / dB and U = -d phi / d beta by centered differences.
  const double d = 1e-5;
  const double dphi_dB = (bethe_regular_point(3, beta, B + d).phi -
                          bethe_regular_point(3, beta, B - d).phi) /
                         (2.0 * d);
  CHECK(std::abs(dphi_dB - p.M) <= 1e-9);
  const double dphi_dbeta = (bethe_regular_point(3, beta + d, B).phi -
                             bethe_regular_point(3, beta - d, B).phi) /
                            (2.0 * d);
  CHECK(std::abs(dphi_dbeta + p.U) <= 1e-8);
}

TEST_CASE("pressure is monotone in coupling and field") {
  double prev = -std::numeric_limits<double>::infinity();
  for (double beta : {0.1, 0.4, 0.7, 1.0}) {
    const double phi = bethe_regular_point(3, beta, 0.3).phi;
    CHECK(phi >= prev);
    prev = phi;
  }
  prev = -std::numeric_limits<double>::infinity();
  for (double B : {0.1, 0.2, 0.4, 0.8}) {
    const double phi = bethe_regular_point(3, 0.7, B).phi;
    CHECK(phi >= prev);
    prev = phi;
  }
}

TEST_CASE("chain pressure matches the transfer matrix") {
  for (double beta : {0.3, 0.6, 1.0}) {
    const double phi = bethe_regular_point(2, beta, 1e-6).phi;
    CHECK(std::abs(phi - log_2cosh(beta)) <= 1e-5);
  }
}

TEST_CASE("chain energy matches the transfer matrix through the pool") {
  Rng rng(4);
  SolveOptions opts;
  opts.pool_size = 20000;
  opts.tol = 1e-8;
  opts.t_max = 500;
  const double beta = 0.6, B = 1e-6;
  const FixedPointResult res = solve(DegreeLaw::regular(1), beta, B, opts, rng);
  REQUIRE(res.converged);
  const Estimate u = internal_energy(res.population, 2.0, beta, 100000, rng);
  CHECK(std::abs(u.value + std::tanh(beta)) <= 1e-6);
}

TEST_CASE("regular-tree susceptibility by re-solving") {
  // zero coupling: independent spins, chi = sech^2(B)
  const double chi0 = bethe_susceptibility_fd(3, 0.0, 0.3, 1e-4);
  CHECK(std::abs(chi0 - (1.0 - std::tanh(0.3) * std::tanh(0.3))) <= 1e-6);
  for (double beta : {0.3, 0.5, 0.7}) {
    CHECK(bethe_susceptibility_fd(3, beta, 0.05, 1e-4) >= 0.0);
  }
  CHECK_THROWS_AS(bethe_susceptibility_fd(3, 0.5, 1e-5, 1e-4), Error);
}

TEST_CASE("pool estimators agree with the closed forms") {
  Rng rng(5);
  SolveOptions opts;
  opts.pool_size = 20000;
  opts.tol = 1e-8;
  opts.t_max = 400;
  const double beta = 0.8, B = 0.2;
  const FixedPointResult res = solve(DegreeLaw::regular(2), beta, B, opts, rng);
  REQUIRE(res.converged);
  const BethePoint p = bethe_regular_point(3, beta, B);
  const DegreeLaw root = DegreeLaw::regular(3);

  const Estimate phi = pressure(res.population, root, beta, B, 100000, rng);
  CHECK(std::abs(phi.value - p.phi) <= std::max(3.0 * phi.se, 1e-7));
  const Estimate m = magnetization(res.population, root, beta, B, 100000, rng);
  CHECK(std::abs(m.value - p.M) <= std::max(3.0 * m.se, 1e-7));
  const Estimate u = internal_energy(res.population, 3.0, beta, 100000, rng);
  CHECK(std::abs(u.value - p.U) <= std::max(3.0 * u.se, 1e-7));
}

TEST_CASE("explicit estimators match pressure slopes on shared draws") {
  Rng rng(6);
  const DegreeLaw law = DegreeLaw::poisson(3.0);  // its own size-biased law
  SolveOptions opts;
  opts.pool_size = 30000;
  opts.tol = 1e-6;
  opts.t_max = 500;
  const double beta = 0.6, B = 0.3;
  const FixedPointResult res = solve(law, beta, B, opts, rng);
  REQUIRE(res.converged);

  const DerivativeCheck dm = magnetization_vs_pressure_slope(
      res.population, law, beta, B, 1e-3, 100000, rng);
  CHECK(std::abs(dm.diff.value) <= std::max(3.0 * dm.diff.se, 1e-4));

  const DerivativeCheck du = energy_vs_pressure_slope(res.population, law, beta,
                                                      B, 1e-3, 100000, rng);
  CHECK(std::abs(du.diff.value) <= std::max(3.0 * du.diff.se, 1e-4));
}

TEST_CASE("estimators reflect in the external field") {
  Rng rng(7);
  const DegreeLaw root = DegreeLaw::poisson(2.0);
  SolveOptions opts;
  opts.pool_size = 10000;
  const double beta = 0.7, B = 0.4;
  const FixedPointResult res = solve(root, beta, B, opts, rng);
  REQUIRE(res.converged);

  Rng ra(55), rb(55);
  const Estimate phi_plus = pressure(res.population, root, beta, B, 20000, ra);
  const Estimate phi_minus = pressure(res.population, root, beta, -B, 20000, rb);
  CHECK(phi_plus.value == phi_minus.value);

  Rng rc(56), rd(56);
  const Estimate m_plus = magnetization(res.population, root, beta, B, 20000, rc);
  const Estimate m_minus =
      magnetization(res.population, root, beta, -B, 20000, rd);
  CHECK(m_plus.value == -m_minus.value);
}

TEST_CASE("pressure is right-continuous at zero coupling") {
  Rng rng(8);
  const DegreeLaw law = DegreeLaw::poisson(2.0);
  const double B = 0.4;
  const double anchor = log_2cosh(B);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.01, 0.001}) {
    SolveOptions opts;
    opts.pool_size = 20000;
    opts.tol = 1e-6;
    const FixedPointResult res = solve(law, eps, B, opts, rng);
    REQUIRE(res.converged);
    const Estimate phi = pressure(res.population, law, eps, B, 200000, rng);
    CHECK(phi.value >= anchor - 3.0 * phi.se);
    CHECK(phi.value <= prev + 3.0 * phi.se);
    prev = phi.value;
    if (eps == 0.001) CHECK(std::abs(phi.value - anchor) <= 3e-4);
  }
}

TEST_CASE("input validation") {
  Rng rng(9);
  FieldPopulation empty;
  empty.beta = 0.5;
  empty.B = 0.2;
  CHECK_THROWS_AS(pressure(empty, DegreeLaw::regular(2), 0.5, 0.2, 10, rng),
                  Error);
  const FieldPopulation pop = pool_at(100, 0.3, 0.5, 0.3);
  CHECK_THROWS_AS(magnetization_vs_pressure_slope(pop, DegreeLaw::regular(2),
                                                  0.5, 0.0005, 1e-3, 10, rng),
                  Error);
  CHECK_THROWS_AS(energy_vs_pressure_slope(pop, DegreeLaw::regular(2), 0.0005,
                                           0.3, 1e-3, 10, rng),
                  Error);
}

}  // TEST_SUITE
