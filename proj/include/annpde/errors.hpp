// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace annpde {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite final : Error { using Error::Error; };
struct DegenerateDenominator final : Error { using Error::Error; };
struct ZeroVector final : Error { using Error::Error; };
struct LengthMismatch final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct InvalidParameter final : Error { using Error::Error; };
struct EmptyProblem final : Error { using Error::Error; };
struct TooLarge final : Error { using Error::Error; };
struct ZeroRhs final : Error { using Error::Error; };
struct DegenerateEigenvector final : Error { using Error::Error; };
struct NonNegativeLambda final : Error { using Error::Error; };
struct AllZeroSample final : Error { using Error::Error; };
struct OutputUnwritable final : Error { using Error::Error; };

/// Raised when a solver stage hits its iteration cap. Carries the counters
/// accumulated so far so experiment records keep real statistics.
struct IterationLimit final : Error {
  explicit IterationLimit(const std::string& msg) : Error(msg) {}
  long iters_initial = 0;
  long iters_descent = 0;
  long precision_updates = 0;
  double lambda = 0.0;
  double final_mesh = 0.0;
};

}  // namespace annpde
