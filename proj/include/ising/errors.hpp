#pragma once

#include <stdexcept>

namespace ising {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A degree law has zero mean where a positive mean is required.
struct ZeroMeanError : Error {
  using Error::Error;
};

// Problem size exceeds a hard implementation limit (e.g. exact enumeration).
struct TooLargeError : Error {
  using Error::Error;
};

// Paired containers have inconsistent lengths.
struct SizeMismatchError : Error {
  using Error::Error;
};

// A sampled branching tree exceeded the configured vertex cap.
struct SizeExplosionError : Error {
  using Error::Error;
};

// A probability (vector) is invalid: negative, non-finite, or zero total mass.
struct InvalidProbabilityError : Error {
  using Error::Error;
};

// A finite-difference step is too small relative to estimator noise.
struct StepTooSmallError : Error {
  using Error::Error;
};

}  // namespace ising
