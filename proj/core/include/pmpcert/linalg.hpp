#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pmpcert/common.hpp"

namespace pmpcert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using ComplexVector = Eigen::VectorXcd;

/// max Re lambda over the spectrum of a square matrix.
double spectral_abscissa(const Matrix& A);

/// e^{At} by scaling-and-squaring with a Pade approximant.
Matrix matrix_exponential(const Matrix& A, double t);

/// Unique PSD solution P of A P + P A^T = -b b^T for Hurwitz A,
/// via the Kronecker vectorization (I (x) A + A (x) I) vec(P) = -vec(b b^T).
/// The result is symmetrized to remove roundoff asymmetry.
Matrix solve_lyapunov(const Matrix& A, const Vector& b);

struct ResolventResult {
  ComplexVector x;
  bool ill_conditioned = false;  // condition estimate above threshold
};

/// Solves (i w I - A) x = b.
ResolventResult resolvent_apply(const Matrix& A, const Vector& b, double omega);

/// Decay envelope ||e^{At}|| <= M e^{-sigma t} with sigma = -alpha(A)/2.
struct SpectralInfo {
  double abscissa = 0.0;  // alpha(A), must be < 0 for the bound to exist
  double sigma = 0.0;
  double growth = 1.0;  // M >= 1
};

SpectralInfo estimate_decay_bound(const Matrix& A);

/// Stable LTI triple (A, b, c): y = c x, x' = A x + b u.
struct StateSpace {
  Matrix A;
  Vector b;
  Vector c;

  Eigen::Index dim() const { return A.rows(); }

  /// Throws unless A is square and Hurwitz, dimensions agree and
  /// b, c are not both zero.
  void validate() const;
  bool is_hurwitz() const { return spectral_abscissa(A) < 0.0; }
};

/// Second additive compound of A: the C(n,2)-dimensional matrix A2 with
/// e^{A2 t} = compound2(e^{At}). Index pairs (i<j) in lexicographic order.
Matrix additive_compound2(const Matrix& A);

/// Row vector of 2x2 minors of the 2 x n matrix [u^T; v^T]
/// (columns (i<j) lexicographic).
RowVector compound2_rows(const RowVector& u, const RowVector& v);

/// Column vector of 2x2 minors of the n x 2 matrix [w x]
/// (rows (i<j) lexicographic).
Vector compound2_cols(const Vector& w, const Vector& x);

}  // namespace pmpcert
