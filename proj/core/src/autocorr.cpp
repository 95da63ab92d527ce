#include "pmpcert/autocorr.hpp"

#include <cmath>
#include <string>

namespace pmpcert {

AutocorrelationModel build_autocorr(const StateSpace& sys) {
  sys.validate();
  AutocorrelationModel model;
  model.sys = sys;
  model.P = solve_lyapunov(sys.A, sys.b);
  model.spectral = estimate_decay_bound(sys.A);
  RowVector ct = sys.c.transpose();
  for (int m = 0; m < 4; ++m) {
    model.cAm[m] = ct;
    ct = ct * sys.A;
  }
  model.Pc = model.P * sys.c;
  model.r0 = model.cAm[0].dot(model.Pc);
  if (model.r0 <= kEvalEps) {
    throw DegenerateSystemError(
        "build_autocorr: R(0) = " + std::to_string(model.r0) +
        " is not positive (c orthogonal to the reachable space)");
  }
  return model;
}

double autocorr_deriv(const AutocorrelationModel& model, int m, double t) {
  if (m < 0 || m > 3) {
    throw ArgumentError("autocorr_deriv: order must be in 0..3");
  }
  const double sign = (t < 0.0 && (m % 2 == 1)) ? -1.0 : 1.0;
  const double ta = std::abs(t);
  if (ta == 0.0) {
    return model.cAm[m].dot(model.Pc);
  }
  const Matrix E = matrix_exponential(model.sys.A, ta);
  return sign * model.cAm[m].dot(E * model.Pc);
}

std::array<double, 4> autocorr_derivs(const AutocorrelationModel& model,
                                      double t) {
  const double ta = std::abs(t);
  Vector EPc =
      ta == 0.0 ? model.Pc : Vector(matrix_exponential(model.sys.A, ta) * model.Pc);
  std::array<double, 4> out{};
  for (int m = 0; m < 4; ++m) {
    const double sign = (t < 0.0 && (m % 2 == 1)) ? -1.0 : 1.0;
    out[m] = sign * model.cAm[m].dot(EPc);
  }
  return out;
}

double autocorr_quadrature_oracle(const StateSpace& sys, double t,
                                  double horizon, int steps,
                                  double tail_tol) {
  sys.validate();
  if (t < 0.0) {
    throw ArgumentError("autocorr_quadrature_oracle: t must be >= 0");
  }
  if (steps < 2 || horizon <= 0.0) {
    throw ArgumentError("autocorr_quadrature_oracle: bad horizon/steps");
  }
  const SpectralInfo info = estimate_decay_bound(sys.A);
  // |g(tau)| <= M ||b|| ||c|| e^{-sigma tau}; the tail of the product
  // integrates to (M ||b|| ||c||)^2 e^{-sigma(2 horizon + t)} / (2 sigma).
  const double amp = info.growth * sys.b.norm() * sys.c.norm();
  const double tail =
      amp * amp * std::exp(-info.sigma * (2.0 * horizon + t)) / (2.0 * info.sigma);
  if (tail > tail_tol) {
    const double needed =
        (std::log(amp * amp / (2.0 * info.sigma * tail_tol)) - info.sigma * t) /
        (2.0 * info.sigma);
    throw ArgumentError(
        "autocorr_quadrature_oracle: horizon too short, tail bound " +
        std::to_string(tail) + " > " + std::to_string(tail_tol) +
        "; need horizon >= " + std::to_string(needed));
  }
  if (steps % 2 == 1) ++steps;  // Simpson needs an even panel count
  const double h = horizon / steps;
  const Matrix Eh = matrix_exponential(sys.A, h);
  auto g_pair = [&](const Vector& x_tau, const Vector& x_tau_t) {
    return sys.c.dot(x_tau) * sys.c.dot(x_tau_t);
  };
  Vector x0 = sys.b;                                     // e^{A tau} b at tau=0
  Vector x1 = matrix_exponential(sys.A, t) * sys.b;      // at tau + t
  double sum = g_pair(x0, x1);
  for (int i = 1; i < steps; ++i) {
    x0 = Eh * x0;
    x1 = Eh * x1;
    sum += (i % 2 == 1 ? 4.0 : 2.0) * g_pair(x0, x1);
  }
  x0 = Eh * x0;
  x1 = Eh * x1;
  sum += g_pair(x0, x1);
  return sum * h / 3.0;
}

PeriodizedModel build_periodized(const AutocorrelationModel& model, double T) {
  if (T <= 0.0) {
    throw ArgumentError("build_periodized: T must be positive");
  }
  PeriodizedModel pm;
  pm.base = model;
  pm.period = T;
  pm.expAT = matrix_exponential(model.sys.A, T);
  const Eigen::Index n = model.sys.dim();
  Matrix ImE = Matrix::Identity(n, n) - pm.expAT;
  Eigen::FullPivLU<Matrix> lu(ImE);
  if (!lu.isInvertible()) {
    throw NumericalError("build_periodized: I - e^{AT} is singular");
  }
  pm.ill_conditioned = lu.rcond() < 1e-10;
  pm.Q = lu.solve(model.P);
  return pm;
}

double periodized_eval(const PeriodizedModel& pm, int m, double t) {
  if (m < 0 || m > 3) {
    throw ArgumentError("periodized_eval: order must be in 0..3");
  }
  if (t < 0.0 || t >= pm.period) {
    throw ArgumentError("periodized_eval: t must lie in [0, T)");
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const Matrix Ef = matrix_exponential(pm.base.sys.A, t);
  const Matrix Eb = matrix_exponential(pm.base.sys.A, pm.period - t);
  const Vector Qc = pm.Q * pm.base.sys.c;
  return pm.base.cAm[m].dot(Ef * Qc) + sign * pm.base.cAm[m].dot(Eb * Qc);
}

double periodized_truncation_oracle(const AutocorrelationModel& model,
                                    double T, int m, double t, int K) {
  if (K < 0) {
    throw ArgumentError("periodized_truncation_oracle: K must be >= 0");
  }
  if (T <= 0.0) {
    throw ArgumentError("periodized_truncation_oracle: T must be positive");
  }
  double sum = 0.0;
  for (int k = -K; k <= K; ++k) {
    sum += autocorr_deriv(model, m, t + k * T);
  }
  return sum;
}

}  // namespace pmpcert
