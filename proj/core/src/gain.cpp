#include "pmpcert/gain.hpp"

#include <algorithm>
#include <cmath>

namespace pmpcert {

std::complex<double> freq_response(const StateSpace& sys, double omega) {
  const ResolventResult r = resolvent_apply(sys.A, sys.b, omega);
  std::complex<double> g = sys.c.cast<std::complex<double>>().dot(r.x);
  if (omega == 0.0) {
    g = std::complex<double>(g.real(), 0.0);  // DC gain is real
  }
  return g;
}

GainSweep gain_sweep(const StateSpace& sys, double omega_lo, double omega_hi,
                     int points, SweepSpacing spacing) {
  if (!(omega_lo >= 0.0) || !(omega_lo < omega_hi) || points < 2) {
    throw ArgumentError("gain_sweep: invalid range or point count");
  }
  if (spacing == SweepSpacing::log && omega_lo <= 0.0) {
    throw ArgumentError("gain_sweep: log spacing requires omega_lo > 0");
  }
  GainSweep sweep;
  sweep.frequencies.resize(points);
  sweep.responses.resize(points);
  sweep.magnitudes.resize(points);
  for (int i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / (points - 1);
    double w;
    if (spacing == SweepSpacing::log) {
      w = omega_lo * std::pow(omega_hi / omega_lo, s);
    } else {
      w = omega_lo + s * (omega_hi - omega_lo);
    }
    sweep.frequencies[i] = w;
    sweep.responses[i] = freq_response(sys, w);
    sweep.magnitudes[i] = std::abs(sweep.responses[i]);
  }
  return sweep;
}

namespace {

MonotonicityReport finish(MonotonicityReport report, double eps) {
  double mag_max = 0.0;
  for (const GainPair& p : report.pairs) {
    mag_max = std::max({mag_max, p.mag_base, p.mag_high});
  }
  report.holds = true;
  for (const GainPair& p : report.pairs) {
    if (p.slack < -eps * mag_max) {
      report.holds = false;
      report.witnesses.push_back(p);
    }
  }
  return report;
}

}  // namespace

MonotonicityReport harmonic_dominance_check(const StateSpace& sys,
                                            double omega, int k_max,
                                            double eps) {
  if (omega <= 0.0 || k_max < 2) {
    throw ArgumentError("harmonic_dominance_check: need omega > 0, k_max >= 2");
  }
  MonotonicityReport report;
  report.base_omega = omega;
  const double base = std::abs(freq_response(sys, omega));
  for (int k = 1; k <= k_max; ++k) {
    GainPair p;
    p.k = k;
    p.mag_base = base;
    p.mag_high = std::abs(freq_response(sys, k * omega));
    p.slack = p.mag_base - p.mag_high;
    report.pairs.push_back(p);
  }
  return finish(std::move(report), eps);
}

MonotonicityReport octave_monotonicity_check(const StateSpace& sys,
                                             double omega, int k_lo, int k_hi,
                                             double eps) {
  if (k_lo >= k_hi) {
    throw ArgumentError("octave_monotonicity_check: need k_lo < k_hi");
  }
  MonotonicityReport report;
  report.base_omega = omega;
  for (int k = k_lo; k < k_hi; ++k) {
    GainPair p;
    p.k = k;
    p.mag_base = std::abs(freq_response(sys, std::ldexp(omega, k)));
    p.mag_high = std::abs(freq_response(sys, std::ldexp(omega, k + 1)));
    p.slack = p.mag_base - p.mag_high;
    report.pairs.push_back(p);
  }
  return finish(std::move(report), eps);
}

MonotonicityReport positive_domination_verify(const StateSpace& sys,
                                              const std::vector<double>& grid,
                                              double eps) {
  if (grid.empty()) {
    throw ArgumentError("positive_domination_verify: empty grid");
  }
  MonotonicityReport report;
  report.base_omega = 0.0;
  const double dc = std::abs(freq_response(sys, 0.0));
  for (size_t i = 0; i < grid.size(); ++i) {
    GainPair p;
    p.k = static_cast<int>(i);
    p.mag_base = dc;
    p.mag_high = std::abs(freq_response(sys, grid[i]));
    p.slack = p.mag_base - p.mag_high;
    report.pairs.push_back(p);
  }
  return finish(std::move(report), eps);
}

}  // namespace pmpcert
