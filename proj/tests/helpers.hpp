#pragma once

#include <random>
#include <vector>

#include "pmpcert/linalg.hpp"
#include "pmpcert/system_io.hpp"

namespace testing_helpers {

inline pmpcert::StateSpace first_order() {
  return pmpcert::realize_transfer({1.0}, {1.0, 1.0});
}

inline pmpcert::StateSpace double_pole() {
  return pmpcert::realize_transfer({1.0}, {1.0, 2.0, 1.0});
}

inline pmpcert::StateSpace resonant() {
  return pmpcert::realize_transfer({1.0}, {1.0, 0.2, 1.0});
}

inline pmpcert::StateSpace two_lags() {
  return pmpcert::realize_transfer({1.0}, {1.0, 3.0, 2.0});
}

/// Series of first-order lags 1 / prod (s + p_i), poles drawn from [lo, hi].
inline pmpcert::StateSpace random_lag_cascade(std::mt19937& rng, int order,
                                              double lo = 0.1,
                                              double hi = 5.0) {
  std::uniform_real_distribution<double> pole(lo, hi);
  std::vector<double> den{1.0};
  for (int i = 0; i < order; ++i) {
    const double p = pole(rng);
    std::vector<double> next(den.size() + 1, 0.0);
    for (size_t j = 0; j < den.size(); ++j) {
      next[j] += den[j];
      next[j + 1] += p * den[j];
    }
    den = std::move(next);
  }
  return pmpcert::realize_transfer({1.0}, den);
}

/// Random Hurwitz triple: dense A shifted left of its spectral abscissa.
inline pmpcert::StateSpace random_stable(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(0.5, 2.0);
  pmpcert::Matrix A(n, n);
  pmpcert::Vector b(n), c(n);
  for (;;) {
    for (int i = 0; i < n; ++i) {
      b(i) = entry(rng);
      c(i) = entry(rng);
      for (int j = 0; j < n; ++j) A(i, j) = entry(rng);
    }
    A -= (pmpcert::spectral_abscissa(A) + shift(rng)) *
         pmpcert::Matrix::Identity(n, n);
    pmpcert::StateSpace sys{A, b, c};
    if (b.norm() > 0.1 && c.norm() > 0.1) return sys;
  }
}

}  // namespace testing_helpers
