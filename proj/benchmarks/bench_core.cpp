#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pmpcert/certificates.hpp"
#include "pmpcert/signals.hpp"
#include "pmpcert/system_io.hpp"

namespace {

pmpcert::StateSpace cascade(int order) {
  std::vector<double> den{1.0};
  for (int i = 0; i < order; ++i) {
    const double p = 0.5 + i;
    std::vector<double> next(den.size() + 1, 0.0);
    for (size_t j = 0; j < den.size(); ++j) {
      next[j] += den[j];
      next[j + 1] += p * den[j];
    }
    den = std::move(next);
  }
  return pmpcert::realize_transfer({1.0}, den);
}

void BM_matrix_exponential(benchmark::State& state) {
  const auto sys = cascade(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmpcert::matrix_exponential(sys.A, 0.37));
  }
}
BENCHMARK(BM_matrix_exponential)->Arg(2)->Arg(4)->Arg(8);

void BM_solve_lyapunov(benchmark::State& state) {
  const auto sys = cascade(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmpcert::solve_lyapunov(sys.A, sys.b));
  }
}
BENCHMARK(BM_solve_lyapunov)->Arg(2)->Arg(4)->Arg(8);

void BM_certify_pmp(benchmark::State& state) {
  const auto sys = cascade(static_cast<int>(state.range(0)));
  const auto model = pmpcert::build_autocorr(sys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmpcert::certify_pmp(model, pmpcert::CheckGrid{}));
  }
}
BENCHMARK(BM_certify_pmp)->Arg(1)->Arg(3)->Arg(5);

void BM_kernel_pmp_fast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pmpcert::SampledPeriodicSignal u, du;
  u.period = du.period = 6.283185307179586;
  u.samples.resize(n);
  du.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = u.period * i / n;
    u.samples[i] = std::sin(t) - 0.1 * std::sin(2 * t);
    du.samples[i] = std::cos(t) - 0.2 * std::cos(2 * t);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmpcert::kernel_pmp_test(
        u, du, false, pmpcert::KernelPmpMode::fast));
  }
}
BENCHMARK(BM_kernel_pmp_fast)->Arg(64)->Arg(256)->Arg(1024);

void BM_kernel_pmp_brute(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pmpcert::SampledPeriodicSignal u, du;
  u.period = du.period = 6.283185307179586;
  u.samples.resize(n);
  du.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = u.period * i / n;
    u.samples[i] = std::sin(t) - 0.1 * std::sin(2 * t);
    du.samples[i] = std::cos(t) - 0.2 * std::cos(2 * t);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmpcert::kernel_pmp_test(
        u, du, false, pmpcert::KernelPmpMode::brute));
  }
}
BENCHMARK(BM_kernel_pmp_brute)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
