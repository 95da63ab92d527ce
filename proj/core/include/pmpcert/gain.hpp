#pragma once

#include <complex>
#include <vector>

#include "pmpcert/linalg.hpp"

namespace pmpcert {

/// G(i w) = c (i w I - A)^{-1} b.
std::complex<double> freq_response(const StateSpace& sys, double omega);

enum class SweepSpacing { log, linear };

struct GainSweep {
  std::vector<double> frequencies;  // rad/s, strictly increasing, >= 0
  std::vector<std::complex<double>> responses;
  std::vector<double> magnitudes;
};

GainSweep gain_sweep(const StateSpace& sys, double omega_lo, double omega_hi,
                     int points, SweepSpacing spacing);

struct GainPair {
  int k = 0;
  double mag_base = 0.0;  // |G(i w)|  (or |G(i 2^k w)| in the octave chain)
  double mag_high = 0.0;  // |G(i k w)| (or |G(i 2^{k+1} w)|)
  double slack = 0.0;     // mag_base - mag_high
};

struct MonotonicityReport {
  double base_omega = 0.0;
  std::vector<GainPair> pairs;
  bool holds = false;
  std::vector<GainPair> witnesses;  // violating pairs
};

/// |G(i w)| >= |G(i k w)| for k = 1..k_max; slack band is relative to the
/// largest magnitude seen.
MonotonicityReport harmonic_dominance_check(const StateSpace& sys,
                                            double omega, int k_max,
                                            double eps = kEvalEps);

/// |G(i 2^k w)| nonincreasing for k in (k_lo..k_hi).
MonotonicityReport octave_monotonicity_check(const StateSpace& sys,
                                             double omega, int k_lo, int k_hi,
                                             double eps = kEvalEps);

/// |G(i w)| <= |G(0)| on the given grid.
MonotonicityReport positive_domination_verify(const StateSpace& sys,
                                              const std::vector<double>& grid,
                                              double eps = kEvalEps);

}  // namespace pmpcert
