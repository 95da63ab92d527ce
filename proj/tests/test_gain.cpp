#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pmpcert/gain.hpp"

using namespace pmpcert;

TEST_CASE("first-order frequency response") {
  const StateSpace sys = testing_helpers::first_order();
  CHECK(freq_response(sys, 0.0).real() == doctest::Approx(1.0));
  CHECK(freq_response(sys, 0.0).imag() == 0.0);

  const auto g1 = freq_response(sys, 1.0);
  CHECK(g1.real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(g1.imag() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(std::abs(g1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(std::abs(freq_response(sys, 2.0)) ==
        doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("magnitude symmetry under frequency negation") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const StateSpace sys = testing_helpers::random_stable(rng, 3);
    for (double w : {0.1, 0.9, 4.2}) {
      CHECK(std::abs(freq_response(sys, -w)) ==
            doctest::Approx(std::abs(freq_response(sys, w))).epsilon(1e-12));
    }
  }
}

TEST_CASE("linear sweep against closed-form magnitudes") {
  const StateSpace sys = testing_helpers::first_order();
  const GainSweep sweep = gain_sweep(sys, 0.0, 3.0, 4, SweepSpacing::linear);
  const double expected[] = {1.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(5.0),
                             1.0 / std::sqrt(10.0)};
  for (int i = 0; i < 4; ++i) {
    CHECK(sweep.frequencies[i] == doctest::Approx(i * 1.0));
    CHECK(sweep.magnitudes[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(sweep.magnitudes[i] ==
          doctest::Approx(std::abs(sweep.responses[i])));
  }
  for (size_t i = 1; i < sweep.frequencies.size(); ++i) {
    CHECK(sweep.frequencies[i] > sweep.frequencies[i - 1]);
  }
}

TEST_CASE("sweep argument validation") {
  const StateSpace sys = testing_helpers::first_order();
  CHECK_THROWS_AS(gain_sweep(sys, 1.0, 0.5, 10, SweepSpacing::linear),
                  ArgumentError);
  CHECK_THROWS_AS(gain_sweep(sys, 0.0, 1.0, 10, SweepSpacing::log),
                  ArgumentError);
  CHECK_THROWS_AS(gain_sweep(sys, 0.0, 1.0, 1, SweepSpacing::linear),
                  ArgumentError);
}

TEST_CASE("harmonic dominance for monotone and resonant gains") {
  const auto mono =
      harmonic_dominance_check(testing_helpers::first_order(), 1.0, 8);
  CHECK(mono.holds);
  CHECK(mono.pairs.size() == 8);
  CHECK(mono.pairs[0].k == 1);
  CHECK(mono.pairs[0].slack == 0.0);

  const auto res =
      harmonic_dominance_check(testing_helpers::resonant(), 0.5, 2);
  CHECK_FALSE(res.holds);
  CHECK(res.witnesses.size() >= 1);
  CHECK(std::abs(freq_response(testing_helpers::resonant(), 0.5)) ==
        doctest::Approx(1.0 / std::sqrt(0.5725)).epsilon(1e-9));
}

TEST_CASE("octave chains") {
  const auto mono =
      octave_monotonicity_check(testing_helpers::first_order(), 1.0, -3, 6);
  CHECK(mono.holds);

  const auto dbl =
      octave_monotonicity_check(testing_helpers::double_pole(), 0.25, -2, 6);
  CHECK(dbl.holds);

  const auto res =
      octave_monotonicity_check(testing_helpers::resonant(), 0.25, 0, 4);
  CHECK_FALSE(res.holds);
}

TEST_CASE("positive domination sweep") {
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) {
    grid.push_back(1e-2 * std::pow(1e5, i / 199.0));
  }
  grid.insert(grid.begin(), 0.0);
  const auto mono =
      positive_domination_verify(testing_helpers::first_order(), grid);
  CHECK(mono.holds);
  CHECK(mono.pairs[0].slack == 0.0);

  const auto res = positive_domination_verify(testing_helpers::resonant(), grid);
  CHECK_FALSE(res.holds);
}

TEST_CASE("verdicts are invariant under positive output scaling") {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 8; ++trial) {
    StateSpace sys = testing_helpers::random_stable(rng, 3);
    StateSpace scaled = sys;
    scaled.c *= 7.5;
    const auto a = harmonic_dominance_check(sys, 0.8, 6);
    const auto b = harmonic_dominance_check(scaled, 0.8, 6);
    CHECK(a.holds == b.holds);
    const auto oa = octave_monotonicity_check(sys, 0.8, -2, 4);
    const auto ob = octave_monotonicity_check(scaled, 0.8, -2, 4);
    CHECK(oa.holds == ob.holds);
  }
}
