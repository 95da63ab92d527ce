#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pmpcert/linalg.hpp"

using namespace pmpcert;

TEST_CASE("spectral abscissa of small matrices") {
  Matrix a1(1, 1);
  a1 << -1.0;
  CHECK(spectral_abscissa(a1) == doctest::Approx(-1.0));

  Matrix a2 = Matrix::Zero(2, 2);
  a2(0, 0) = -1.0;
  a2(1, 1) = -2.0;
  CHECK(spectral_abscissa(a2) == doctest::Approx(-1.0));

  Matrix a3(2, 2);
  a3 << 0.0, 1.0, -1.0, -0.2;
  CHECK(spectral_abscissa(a3) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("matrix exponential basics") {
  Matrix A(2, 2);
  A << -0.3, 0.7, 0.1, -1.1;
  CHECK((matrix_exponential(A, 0.0) - Matrix::Identity(2, 2)).norm() < 1e-14);

  Matrix s(1, 1);
  s << -1.0;
  CHECK(matrix_exponential(s, 1.0)(0, 0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

  Matrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  const Matrix e = matrix_exponential(nil, 2.0);
  CHECK(e(0, 0) == doctest::Approx(1.0));
  CHECK(e(0, 1) == doctest::Approx(2.0));
  CHECK(e(1, 0) == doctest::Approx(0.0));
  CHECK(e(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("matrix exponential group law") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSpace sys = testing_helpers::random_stable(rng, 3);
    const double s = time(rng);
    const double t = time(rng);
    const Matrix lhs =
        matrix_exponential(sys.A, s) * matrix_exponential(sys.A, t);
    const Matrix rhs = matrix_exponential(sys.A, s + t);
    CHECK((lhs - rhs).norm() <= kExpmTol * std::max(1.0, rhs.norm()) * 100);
  }
}

TEST_CASE("matrix exponential refuses extreme arguments") {
  Matrix A(1, 1);
  A << 1e6;
  CHECK_THROWS_AS(matrix_exponential(A, 1e6), NumericalError);
}

TEST_CASE("lyapunov solve on closed-form cases") {
  Matrix a1(1, 1);
  a1 << -1.0;
  Vector b1(1);
  b1 << 1.0;
  CHECK(solve_lyapunov(a1, b1)(0, 0) == doctest::Approx(0.5).epsilon(1e-13));

  Matrix a2 = Matrix::Zero(2, 2);
  a2(0, 0) = -1.0;
  a2(1, 1) = -2.0;
  Vector b2(2);
  b2 << 1.0, 1.0;
  const Matrix P = solve_lyapunov(a2, b2);
  CHECK(P(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(P(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(P(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(P(1, 1) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("lyapunov residual and PSD on random stable systems") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const StateSpace sys = testing_helpers::random_stable(rng, 2 + trial % 4);
    const Matrix P = solve_lyapunov(sys.A, sys.b);
    const Matrix bbT = sys.b * sys.b.transpose();
    const Matrix residual = sys.A * P + P * sys.A.transpose() + bbT;
    CHECK(residual.norm() <= kLyapTol * bbT.norm());
    CHECK((P - P.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(P);
    CHECK(es.eigenvalues().minCoeff() >= -kLyapTol * P.norm());
  }
}

TEST_CASE("lyapunov rejects non-Hurwitz input") {
  Matrix A(1, 1);
  A << 0.5;
  Vector b(1);
  b << 1.0;
  CHECK_THROWS_AS(solve_lyapunov(A, b), ArgumentError);
}

TEST_CASE("resolvent on scalar and diagonal systems") {
  Matrix a1(1, 1);
  a1 << -1.0;
  Vector b1(1);
  b1 << 1.0;
  CHECK(resolvent_apply(a1, b1, 0.0).x(0).real() == doctest::Approx(1.0));
  CHECK(resolvent_apply(a1, b1, 0.0).x(0).imag() == doctest::Approx(0.0));

  const auto r = resolvent_apply(a1, b1, 1.0);
  CHECK(r.x(0).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(r.x(0).imag() == doctest::Approx(-0.5).epsilon(1e-13));

  Matrix a2 = Matrix::Zero(2, 2);
  a2(0, 0) = -1.0;
  a2(1, 1) = -2.0;
  Vector b2(2);
  b2 << 1.0, 1.0;
  const auto d = resolvent_apply(a2, b2, 0.0);
  CHECK(d.x(0).real() == doctest::Approx(1.0));
  CHECK(d.x(1).real() == doctest::Approx(0.5));
}

TEST_CASE("resolvent conjugate symmetry") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSpace sys = testing_helpers::random_stable(rng, 3);
    const double w = 0.1 + trial * 0.37;
    const auto plus = resolvent_apply(sys.A, sys.b, w);
    const auto minus = resolvent_apply(sys.A, sys.b, -w);
    CHECK((minus.x - plus.x.conjugate()).norm() < 1e-11);
  }
}

TEST_CASE("decay bound envelopes the semigroup") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const StateSpace sys = testing_helpers::random_stable(rng, 2 + trial % 3);
    const SpectralInfo info = estimate_decay_bound(sys.A);
    CHECK(info.abscissa < 0.0);
    CHECK(info.sigma == doctest::Approx(-info.abscissa / 2.0));
    CHECK(info.growth >= 1.0);
    for (double t : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0 / info.sigma}) {
      const double norm = matrix_exponential(sys.A, t).norm();
      CHECK(norm <= info.growth * std::exp(-info.sigma * t) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("statespace validation") {
  StateSpace ok = testing_helpers::first_order();
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.is_hurwitz());

  StateSpace bad = ok;
  bad.A(0, 0) = 1.0;
  CHECK_THROWS(bad.validate());

  StateSpace mismatched = ok;
  mismatched.b = Vector::Ones(2);
  CHECK_THROWS_AS(mismatched.validate(), DimensionError);
}

TEST_CASE("second additive compound reproduces 2x2 minors of the semigroup") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const StateSpace sys = testing_helpers::random_stable(rng, n);
    Vector u(n), v(n), w(n), x(n);
    for (int i = 0; i < n; ++i) {
      u(i) = entry(rng);
      v(i) = entry(rng);
      w(i) = entry(rng);
      x(i) = entry(rng);
    }
    const Matrix A2 = additive_compound2(sys.A);
    const RowVector rows = compound2_rows(u.transpose(), v.transpose());
    const Vector cols = compound2_cols(w, x);
    for (double t : {0.0, 0.2, 1.0, 2.5}) {
      const Matrix E = matrix_exponential(sys.A, t);
      Eigen::Matrix2d m;
      m << u.dot(E * w), u.dot(E * x), v.dot(E * w), v.dot(E * x);
      const double direct = m.determinant();
      const double compound = rows * matrix_exponential(A2, t) * cols;
      CHECK(std::abs(direct - compound) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("compound dimensions") {
  Matrix A = Matrix::Identity(4, 4);
  CHECK(additive_compound2(A).rows() == 6);
  Matrix small = Matrix::Identity(1, 1);
  CHECK_THROWS_AS(additive_compound2(small), DimensionError);
}
