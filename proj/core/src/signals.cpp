#include "pmpcert/signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pmpcert {

namespace {

int sign_of(double x, double eps) {
  if (x > eps) return 1;
  if (x < -eps) return -1;
  return 0;
}

/// Linear (non-cyclic) variation with zeros deleted; -1 if all zero.
int linear_variation(std::span<const double> v, double eps) {
  int count = 0;
  int last = 0;
  bool any = false;
  for (double x : v) {
    const int s = sign_of(x, eps);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
    any = true;
  }
  return any ? count : -1;
}

/// Linear strict variation: max sign changes over all +-1 completions of
/// zeros, by a two-state DP over the last realized sign.
int linear_strict_variation(std::span<const double> v, double eps) {
  constexpr int kNone = std::numeric_limits<int>::min();
  int best_pos = kNone;
  int best_neg = kNone;
  bool any = false;
  bool started = false;
  for (double x : v) {
    const int s = sign_of(x, eps);
    any = any || (s != 0);
    if (!started) {
      if (s >= 0) best_pos = 0;
      if (s <= 0) best_neg = 0;
      if (s > 0) best_neg = kNone;
      if (s < 0) best_pos = kNone;
      started = true;
      continue;
    }
    const int from_pos = best_pos;
    const int from_neg = best_neg;
    auto step_to = [&](int target) {
      int val = kNone;
      if (target > 0) {
        if (from_pos != kNone) val = std::max(val, from_pos);
        if (from_neg != kNone) val = std::max(val, from_neg + 1);
      } else {
        if (from_neg != kNone) val = std::max(val, from_neg);
        if (from_pos != kNone) val = std::max(val, from_pos + 1);
      }
      return val;
    };
    if (s > 0) {
      best_pos = step_to(1);
      best_neg = kNone;
    } else if (s < 0) {
      best_neg = step_to(-1);
      best_pos = kNone;
    } else {
      const int np = step_to(1);
      const int nn = step_to(-1);
      best_pos = np;
      best_neg = nn;
    }
  }
  if (!any) return -1;
  return std::max(best_pos, best_neg);
}

}  // namespace

VariationCount cyclic_variation(std::span<const double> v, bool strict,
                                double eps) {
  if (v.empty()) {
    throw ArgumentError("cyclic_variation: empty input");
  }
  const int lin = strict ? linear_strict_variation(v, eps)
                         : linear_variation(v, eps);
  VariationCount out;
  out.strict = strict;
  if (lin < 0) {
    out.value = -1;  // all-zero convention
    return out;
  }
  // Cyclic count is the linear count rounded up to even.
  out.value = (lin % 2 == 1) ? lin + 1 : lin;
  return out;
}

namespace {

std::vector<double> cyclic_differences(std::span<const double> v) {
  const size_t n = v.size();
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) {
    d[i] = v[(i + 1) % n] - v[i];
  }
  return d;
}

bool pm_of_values(std::span<const double> v, bool strict, double eps) {
  const std::vector<double> d = cyclic_differences(v);
  return cyclic_variation(d, strict, eps).value <= 2;
}

}  // namespace

bool is_periodically_monotone(const SampledPeriodicSignal& sig, bool strict,
                              double eps) {
  if (sig.size() < 4) {
    throw ArgumentError("is_periodically_monotone: need N >= 4");
  }
  return pm_of_values(sig.samples, strict, eps);
}

bool pm_gamma_sweep_oracle(const SampledPeriodicSignal& sig, double eps) {
  if (sig.size() < 4) {
    throw ArgumentError("pm_gamma_sweep_oracle: need N >= 4");
  }
  std::vector<double> sorted = sig.samples;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> levels;
  levels.push_back(sorted.front() - 1.0);
  levels.push_back(sorted.back() + 1.0);
  for (size_t i = 0; i < sorted.size(); ++i) {
    levels.push_back(sorted[i]);
    if (i + 1 < sorted.size()) {
      levels.push_back(0.5 * (sorted[i] + sorted[i + 1]));
    }
  }
  std::vector<double> shifted(sig.samples.size());
  for (double gamma : levels) {
    for (size_t i = 0; i < shifted.size(); ++i) {
      shifted[i] = sig.samples[i] - gamma;
    }
    if (cyclic_variation(shifted, /*strict=*/false, eps).value > 2) {
      return false;
    }
  }
  return true;
}

namespace {

struct SignSummary {
  bool has_pos = false;
  bool has_neg = false;
  bool has_zero = false;
};

SignSummary classify(std::span<const double> dets, double eps_rel) {
  double dmax = 0.0;
  for (double d : dets) dmax = std::max(dmax, std::abs(d));
  const double tau = eps_rel * dmax;
  SignSummary s;
  for (double d : dets) {
    if (d > tau) {
      s.has_pos = true;
    } else if (d < -tau) {
      s.has_neg = true;
    } else {
      s.has_zero = true;
    }
  }
  return s;
}

bool same_sign(const SignSummary& s, bool strict) {
  if (strict) {
    return !s.has_zero && (s.has_pos != s.has_neg);
  }
  return !(s.has_pos && s.has_neg);
}

bool kernel_pmp_brute(std::span<const double> u, std::span<const double> du,
                      bool strict, double eps) {
  const int n = static_cast<int>(u.size());
  std::vector<double> dets;
  dets.reserve(static_cast<size_t>(n) * (n - 1) * (n - 2) / 6);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        // det of rows (1, u, du)
        const double d = (u[j] - u[i]) * (du[k] - du[i]) -
                         (u[k] - u[i]) * (du[j] - du[i]);
        dets.push_back(d);
      }
    }
  }
  return same_sign(classify(dets, eps), strict);
}

bool kernel_pmp_fast(std::span<const double> u, std::span<const double> du,
                     bool strict, double eps) {
  const int n = static_cast<int>(u.size());
  double u_scale = 0.0;
  double du_scale = 0.0;
  for (int i = 0; i < n; ++i) {
    u_scale = std::max(u_scale, std::abs(u[i]));
    du_scale = std::max(du_scale, std::abs(du[i]));
  }
  // Delete indices where both cyclic differences vanish (repeated curve
  // points); the reduction is invalid without this step.
  std::vector<int> keep;
  keep.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    const bool same_point =
        std::abs(u[i] - u[prev]) <= eps * u_scale &&
        std::abs(du[i] - du[prev]) <= eps * du_scale;
    if (!same_point) keep.push_back(i);
  }
  const int m = static_cast<int>(keep.size());
  if (m <= 3) {
    // Degenerate reduced curve; the triple enumeration is trivial here.
    return kernel_pmp_brute(u, du, strict, eps);
  }
  std::vector<double> g1(m), g2(m);
  for (int i = 0; i < m; ++i) {
    g1[i] = u[keep[i]];
    g2[i] = du[keep[i]];
  }
  const std::vector<double> d1 = cyclic_differences(g1);
  const std::vector<double> d2 = cyclic_differences(g2);
  std::vector<double> minors(m);
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    minors[i] = d1[i] * d2[j] - d1[j] * d2[i];
  }
  const SignSummary s = classify(minors, eps);
  double minor_max = 0.0;
  for (double d : minors) minor_max = std::max(minor_max, std::abs(d));
  const double spread = u_scale * du_scale;
  if (minor_max <= eps * std::max(spread, 1e-300)) {
    // Rank-2 curve: convex contour iff both coordinates are PM.
    if (strict) return false;
    return pm_of_values(g1, false, eps * std::max(u_scale, 1e-300)) &&
           pm_of_values(g2, false, eps * std::max(du_scale, 1e-300));
  }
  if (!same_sign(s, strict)) return false;
  return pm_of_values(g1, strict, eps * std::max(u_scale, 1e-300)) &&
         pm_of_values(g2, strict, eps * std::max(du_scale, 1e-300));
}

}  // namespace

bool kernel_pmp_test(const SampledPeriodicSignal& u,
                     const SampledPeriodicSignal& du, bool strict,
                     KernelPmpMode mode, double eps) {
  if (u.size() < 4) {
    throw ArgumentError("kernel_pmp_test: need N >= 4");
  }
  if (u.size() != du.size() ||
      std::abs(u.period - du.period) > 1e-12 * std::abs(u.period)) {
    throw ArgumentError("kernel_pmp_test: u and du must share N and T");
  }
  if (mode == KernelPmpMode::brute) {
    return kernel_pmp_brute(u.samples, du.samples, strict, eps);
  }
  return kernel_pmp_fast(u.samples, du.samples, strict, eps);
}

namespace {

SampledPeriodicSignal harmonic_mix(double omega, int k, double a, int n,
                                   bool derivative) {
  SampledPeriodicSignal sig;
  sig.period = 2.0 * std::numbers::pi / omega;
  sig.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = sig.period * i / n;
    if (derivative) {
      sig.samples[i] =
          omega * std::cos(omega * t) - a * k * omega * std::cos(k * omega * t);
    } else {
      sig.samples[i] = std::sin(omega * t) - a * std::sin(k * omega * t);
    }
  }
  return sig;
}

}  // namespace

double max_pm_amplitude(double omega, int k, int samples, double tol) {
  if (k < 2) throw ArgumentError("max_pm_amplitude: k must be >= 2");
  if (omega <= 0.0) throw ArgumentError("max_pm_amplitude: omega must be > 0");
  if (samples < 32 * k) {
    throw ArgumentError("max_pm_amplitude: need N >= 32k samples");
  }
  if (tol <= 0.0) throw ArgumentError("max_pm_amplitude: tol must be > 0");
  auto passes = [&](double a) {
    const SampledPeriodicSignal u = harmonic_mix(omega, k, a, samples, false);
    const SampledPeriodicSignal du = harmonic_mix(omega, k, a, samples, true);
    return kernel_pmp_test(u, du, /*strict=*/false, KernelPmpMode::fast);
  };
  if (!passes(0.0)) {
    throw NumericalError("max_pm_amplitude: pure sinusoid fails the test");
  }
  double a_hi = 1.0;
  int doublings = 0;
  while (passes(a_hi)) {
    a_hi *= 2.0;
    if (++doublings > 60) {
      throw NumericalError("max_pm_amplitude: no failing amplitude found");
    }
  }
  double a_lo = 0.0;
  while (a_hi - a_lo > tol) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (passes(mid)) {
      a_lo = mid;
    } else {
      a_hi = mid;
    }
  }
  if (passes(a_lo + tol)) {
    throw NumericalError(
        "max_pm_amplitude: bracketing failure, pass/fail not monotone in a");
  }
  return a_lo;
}

SampledPeriodicSignal circular_convolve(const SampledPeriodicSignal& kernel,
                                        const SampledPeriodicSignal& u) {
  const int n = kernel.size();
  if (n != u.size() ||
      std::abs(kernel.period - u.period) > 1e-12 * std::abs(u.period)) {
    throw ArgumentError("circular_convolve: N and T must match");
  }
  SampledPeriodicSignal y;
  y.period = u.period;
  y.samples.assign(n, 0.0);
  const double w = u.period / n;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += kernel.samples[(i - j + n) % n] * u.samples[j];
    }
    y.samples[i] = w * acc;
  }
  return y;
}

double verify_monotone_gain_identity(const StateSpace& sys, double omega,
                                     int k, double a, int samples) {
  if (k < 2) throw ArgumentError("verify_monotone_gain_identity: k >= 2");
  sys.validate();
  const double T = 2.0 * std::numbers::pi / omega;
  const AutocorrelationModel model = build_autocorr(sys);
  const PeriodizedModel pmod = build_periodized(model, T);

  SampledPeriodicSignal kernel;
  kernel.period = T;
  kernel.samples.resize(samples);
  for (int i = 0; i < samples; ++i) {
    kernel.samples[i] = periodized_eval(pmod, 0, T * i / samples);
  }
  const SampledPeriodicSignal u = harmonic_mix(omega, k, a, samples, false);
  const SampledPeriodicSignal y = circular_convolve(kernel, u);

  const std::complex<double> g1 =
      sys.c.cast<std::complex<double>>().dot(resolvent_apply(sys.A, sys.b, omega).x);
  const std::complex<double> gk =
      sys.c.cast<std::complex<double>>().dot(resolvent_apply(sys.A, sys.b, k * omega).x);
  const double m1 = std::norm(g1);
  const double mk = std::norm(gk);
  double max_dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = T * i / samples;
    const double expected =
        m1 * std::sin(omega * t) - a * mk * std::sin(k * omega * t);
    max_dev = std::max(max_dev, std::abs(y.samples[i] - expected));
  }
  return max_dev;
}

}  // namespace pmpcert
