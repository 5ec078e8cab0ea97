#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ising/exact.hpp"
#include "ising/rng.hpp"

namespace ising {

// Outcome of one self-check suite.  A check "violation" is the amount by
// which an inequality fails (positive = broken); `worst` keeps the largest
// violation seen so a passing suite reports its safety margin too.
struct SuiteReport {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string detail;

  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  std::size_t instances = 100;  // random instances per inequality suite
  std::uint32_t max_n = 10;     // largest instance size
  double gks_tol = 1e-12;
  double ghs_tol = 1e-8;
  std::size_t trees = 100;      // trees per boundary-gap configuration
  std::size_t pool_size = 20000;
  double bracket_tol = 1e-3;
};

// Random small ferromagnetic instance (mixed graph models, nonnegative
// fields), the common input of the inequality suites.
IsingInstance random_small_instance(std::uint32_t max_n, Rng& rng);

// First and second Griffiths inequalities on exact moments:
// <sigma_i> >= 0, <sigma_i sigma_j> >= 0, Cov(sigma_i, sigma_j) >= 0.
SuiteReport gks_suite(const VerifyOptions& opt, Rng& rng);

// Concavity of the magnetization in a uniform external field shift
// (second difference at +/- delta must be <= 0).  The magnetization
// functional is injectable so a deliberately broken implementation can be
// used to confirm the suite actually detects violations.
using MagnetizationFn =
    std::function<double(const IsingInstance&, double field_shift)>;
SuiteReport ghs_suite(const VerifyOptions& opt, Rng& rng);
SuiteReport ghs_suite(const VerifyOptions& opt, Rng& rng,
                      const MagnetizationFn& magnetization_of);

// Tree boundary-condition gap: gap >= 0, free nondecreasing / plus
// nonincreasing in depth, and depth * gap below the explicit constant.
SuiteReport boundary_gap_suite(const VerifyOptions& opt, Rng& rng);

// Bracketing solve diagnostics: convergence, pointwise order, monotone
// free-pool quantiles, and the W1 gap at exit, for a regular and a
// heavy-tailed offspring law.
SuiteReport bracket_collapse_suite(const VerifyOptions& opt, Rng& rng);

// All four suites in a fixed order.
std::vector<SuiteReport> run_verification(const VerifyOptions& opt, Rng& rng);

}  // namespace ising
