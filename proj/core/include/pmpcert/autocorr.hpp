#pragma once

#include <array>

#include "pmpcert/linalg.hpp"

namespace pmpcert {

/// Impulse-response autocorrelation R(t) = integral g(tau) g(tau+t) dtau of a
/// stable triple, evaluated in closed form as c A^m e^{At} P c^T (t >= 0)
/// with P the controllability Gramian. Even in t; derivative orders 0..3.
struct AutocorrelationModel {
  StateSpace sys;
  Matrix P;
  double r0 = 0.0;  // R(0) = c P c^T > 0
  SpectralInfo spectral;
  std::array<RowVector, 4> cAm;  // cached c^T A^m, m = 0..3
  Vector Pc;                     // cached P c^T
};

AutocorrelationModel build_autocorr(const StateSpace& sys);

/// R^{(m)}(t); m in 0..3. Negative t by evenness: (-1)^m R^{(m)}(|t|).
/// t = 0 is the right-limit c A^m P c^T.
double autocorr_deriv(const AutocorrelationModel& model, int m, double t);

/// All four derivative orders at once, sharing a single e^{At} evaluation.
std::array<double, 4> autocorr_derivs(const AutocorrelationModel& model,
                                      double t);

/// Independent oracle: composite-Simpson quadrature of
/// integral_0^horizon g(tau) g(tau+t) dtau with g(tau) = c e^{A tau} b.
/// Refuses if the decay-bound tail beyond the horizon exceeds tail_tol.
double autocorr_quadrature_oracle(const StateSpace& sys, double t,
                                  double horizon, int steps,
                                  double tail_tol = 1e-8);

/// Periodized autocorrelation R^T(t) = sum_k R(t + kT), evaluated exactly by
/// resumming the two one-sided geometric series into (I - e^{AT})^{-1}.
struct PeriodizedModel {
  AutocorrelationModel base;
  double period = 0.0;
  Matrix expAT;
  Matrix Q;  // (I - e^{AT})^{-1} P
  bool ill_conditioned = false;
};

PeriodizedModel build_periodized(const AutocorrelationModel& model, double T);

/// m-th derivative of R^T at t in [0, T); endpoints by right limits.
double periodized_eval(const PeriodizedModel& pm, int m, double t);

/// Truncated partial sum sum_{k=-K..K} R^{(m)}(t + kT); the independent
/// oracle guarding the resummed closed form.
double periodized_truncation_oracle(const AutocorrelationModel& model,
                                    double T, int m, double t, int K);

}  // namespace pmpcert
