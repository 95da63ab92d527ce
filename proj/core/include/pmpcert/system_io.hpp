#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmpcert/linalg.hpp"

namespace pmpcert {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemSpec {
  std::string label;
  StateSpace sys;
};

/// Controllable companion realization of num(s)/den(s), coefficients in
/// descending powers, deg(num) < deg(den).
StateSpace realize_transfer(const std::vector<double>& num,
                            const std::vector<double>& den);

/// Line-oriented key/value system description:
///
///   label: my-system            (optional)
///   type: transfer | statespace
///   num: 1                      (transfer: descending coefficients)
///   den: 1 2 1
///   n: 2                        (statespace)
///   A: 0 1 -1 -2                (row-major)
///   b: 0 1
///   c: 1 0
///
/// '#' starts a comment. Stability is validated on load.
SystemSpec parse_system(std::istream& in);
SystemSpec parse_system_file(const std::string& path);

/// Inverse of parse_system as a statespace block, >= 15 significant digits.
std::string format_system(const SystemSpec& spec);

}  // namespace pmpcert
