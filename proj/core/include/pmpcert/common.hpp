#pragma once

#include <stdexcept>
#include <string>

namespace pmpcert {

// Default tolerances. Linear-algebra tolerances sit two orders below the
// eval_eps decision band so accumulated roundoff cannot flip a verdict.
inline constexpr double kLyapTol = 1e-10;
inline constexpr double kExpmTol = 1e-12;
inline constexpr double kEvalEps = 1e-8;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pmpcert
