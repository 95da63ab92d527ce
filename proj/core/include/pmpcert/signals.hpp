#pragma once

#include <span>
#include <vector>

#include "pmpcert/autocorr.hpp"
#include "pmpcert/common.hpp"

namespace pmpcert {

/// One period of N uniform samples, t_i = i * T / N.
struct SampledPeriodicSignal {
  double period = 0.0;
  std::vector<double> samples;

  int size() const { return static_cast<int>(samples.size()); }
  double time_at(int i) const { return period * i / samples.size(); }
};

struct VariationCount {
  int value = -1;  // -1 for the all-zero signal
  bool strict = false;
};

/// Cyclic sign-change count around one period. Non-strict deletes zeros;
/// strict lets every zero take the +-1 completion that maximizes changes.
/// Entries within eps of zero are treated as exact zeros first.
VariationCount cyclic_variation(std::span<const double> v, bool strict,
                                double eps = kEvalEps);

/// PM test via cyclic variation of the forward differences:
/// u is (strictly) periodically monotone iff varc(Delta u) <= 2.
bool is_periodically_monotone(const SampledPeriodicSignal& sig, bool strict,
                              double eps = kEvalEps);

/// Direct check of the defining property varc(u - gamma*1) <= 2 over all
/// level candidates (midpoints of sorted sample values plus the extremes).
bool pm_gamma_sweep_oracle(const SampledPeriodicSignal& sig,
                           double eps = kEvalEps);

enum class KernelPmpMode { brute, fast };

/// Kernel PMP determinant test on the sampled pair (u, du): all 3x3
/// determinants with rows (1, u(t_i), du(t_i)) must share one sign.
/// brute enumerates every C(N,3) triple; fast checks consecutive 2-minors of
/// the difference curve plus periodic monotonicity of u and du, after
/// deleting indices where both differences vanish.
bool kernel_pmp_test(const SampledPeriodicSignal& u,
                     const SampledPeriodicSignal& du, bool strict,
                     KernelPmpMode mode, double eps = kEvalEps);

/// Largest a such that sin(w t) - a sin(k w t) passes the kernel PMP test,
/// found by doubling then bisection to absolute tolerance tol.
double max_pm_amplitude(double omega, int k, int samples, double tol);

/// Riemann-sum periodic convolution, weight T/N per sample.
SampledPeriodicSignal circular_convolve(const SampledPeriodicSignal& kernel,
                                        const SampledPeriodicSignal& u);

/// Max pointwise deviation between the sampled convolution
/// (R^T * u_a) and the closed-form |G(iw)|^2 sin(w t) - a |G(ikw)|^2 sin(k w t).
double verify_monotone_gain_identity(const StateSpace& sys, double omega,
                                     int k, double a, int samples);

}  // namespace pmpcert
