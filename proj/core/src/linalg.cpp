#include "pmpcert/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmpcert {

double spectral_abscissa(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw DimensionError("spectral_abscissa: matrix must be square");
  }
  Eigen::EigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("spectral_abscissa: eigenvalue iteration failed");
  }
  return es.eigenvalues().real().maxCoeff();
}

Matrix matrix_exponential(const Matrix& A, double t) {
  if (A.rows() != A.cols()) {
    throw DimensionError("matrix_exponential: matrix must be square");
  }
  if (!std::isfinite(t)) {
    throw ArgumentError("matrix_exponential: t must be finite");
  }
  const double scaled_norm = std::abs(t) * A.cwiseAbs().maxCoeff();
  if (scaled_norm > 1e8) {
    throw NumericalError("matrix_exponential: ||At|| = " +
                         std::to_string(scaled_norm) +
                         " exceeds the supported range");
  }
  Matrix At = A * t;
  Matrix E = At.exp();
  if (!E.allFinite()) {
    throw NumericalError("matrix_exponential: overflow in e^{At}");
  }
  return E;
}

Matrix solve_lyapunov(const Matrix& A, const Vector& b) {
  if (A.rows() != A.cols()) {
    throw DimensionError("solve_lyapunov: A must be square");
  }
  if (b.size() != A.rows()) {
    throw DimensionError("solve_lyapunov: b has wrong dimension");
  }
  if (spectral_abscissa(A) >= 0.0) {
    throw ArgumentError("solve_lyapunov: A is not Hurwitz");
  }
  const Eigen::Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  Matrix K(n * n, n * n);
  // I (x) A + A (x) I, column-major vec convention.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K.block(i * n, j * n, n, n) = I(i, j) * A + A(i, j) * I;
    }
  }
  Matrix Q = -(b * b.transpose());
  Eigen::Map<Vector> q(Q.data(), n * n);
  Eigen::FullPivLU<Matrix> lu(K);
  if (!lu.isInvertible()) {
    throw NumericalError("solve_lyapunov: singular Kronecker system");
  }
  Vector p = lu.solve(q);
  Matrix P = Eigen::Map<Matrix>(p.data(), n, n);
  P = 0.5 * (P + P.transpose()).eval();
  return P;
}

ResolventResult resolvent_apply(const Matrix& A, const Vector& b, double omega) {
  if (A.rows() != A.cols() || b.size() != A.rows()) {
    throw DimensionError("resolvent_apply: dimension mismatch");
  }
  const Eigen::Index n = A.rows();
  Eigen::MatrixXcd M = std::complex<double>(0.0, omega) *
                           Eigen::MatrixXcd::Identity(n, n) -
                       A.cast<std::complex<double>>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
  if (!lu.isInvertible()) {
    throw NumericalError("resolvent_apply: i*omega is an eigenvalue of A");
  }
  ResolventResult result;
  result.x = lu.solve(b.cast<std::complex<double>>());
  const double rcond = lu.rcond();
  result.ill_conditioned = rcond < 1e-12;
  return result;
}

SpectralInfo estimate_decay_bound(const Matrix& A) {
  SpectralInfo info;
  info.abscissa = spectral_abscissa(A);
  if (info.abscissa >= 0.0) {
    throw ArgumentError("estimate_decay_bound: A is not Hurwitz");
  }
  info.sigma = -info.abscissa / 2.0;
  // Sample ||e^{At}|| e^{sigma t} on a log grid; 1.25x the max is a
  // conservative envelope constant.
  double peak = 1.0;
  const double t_hi = 40.0 / info.sigma;
  for (int i = 0; i <= 48; ++i) {
    const double t = t_hi * std::pow(10.0, -4.0 + 4.0 * i / 48.0);
    const double v = matrix_exponential(A, t).norm() * std::exp(info.sigma * t);
    peak = std::max(peak, v);
  }
  info.growth = 1.25 * peak;
  return info;
}

void StateSpace::validate() const {
  if (A.rows() != A.cols()) {
    throw DimensionError("StateSpace: A must be square");
  }
  if (A.rows() < 1) {
    throw DimensionError("StateSpace: dimension must be >= 1");
  }
  if (b.size() != A.rows() || c.size() != A.rows()) {
    throw DimensionError("StateSpace: b/c dimension mismatch");
  }
  if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw ArgumentError("StateSpace: entries must be finite");
  }
  if (b.isZero(0.0) && c.isZero(0.0)) {
    throw ArgumentError("StateSpace: b and c must not both be zero");
  }
  if (!is_hurwitz()) {
    throw ArgumentError("StateSpace: A is not Hurwitz");
  }
}

namespace {

Eigen::Index pair_count(Eigen::Index n) { return n * (n - 1) / 2; }

}  // namespace

Matrix additive_compound2(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw DimensionError("additive_compound2: matrix must be square");
  }
  const Eigen::Index n = A.rows();
  if (n < 2) {
    throw DimensionError("additive_compound2: need n >= 2");
  }
  const Eigen::Index m = pair_count(n);
  Matrix A2 = Matrix::Zero(m, m);
  // Linear term of compound2(I + hA): minor over rows (i,j), cols (k,l) is
  // d(i,k) a(j,l) + d(j,l) a(i,k) - d(i,l) a(j,k) - d(j,k) a(i,l).
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++p) {
      Eigen::Index q = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = k + 1; l < n; ++l, ++q) {
          double v = 0.0;
          if (i == k) v += A(j, l);
          if (j == l) v += A(i, k);
          if (i == l) v -= A(j, k);
          if (j == k) v -= A(i, l);
          A2(p, q) = v;
        }
      }
    }
  }
  return A2;
}

RowVector compound2_rows(const RowVector& u, const RowVector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("compound2_rows: size mismatch");
  }
  const Eigen::Index n = u.size();
  RowVector out(pair_count(n));
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++p) {
      out(p) = u(i) * v(j) - u(j) * v(i);
    }
  }
  return out;
}

Vector compound2_cols(const Vector& w, const Vector& x) {
  if (w.size() != x.size()) {
    throw DimensionError("compound2_cols: size mismatch");
  }
  const Eigen::Index n = w.size();
  Vector out(pair_count(n));
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++p) {
      out(p) = w(i) * x(j) - w(j) * x(i);
    }
  }
  return out;
}

}  // namespace pmpcert
