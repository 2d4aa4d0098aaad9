// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
// Serial reference kernels against the OpenMP kernels, and the serial trial
// loop against the parallel one.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qsprep/cascade.hpp"
#include "qsprep/kernels.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/types.hpp"

namespace {

using qsprep::cplx;

std::vector<cplx> random_amps(unsigned n) {
  qsprep::RngStream s(n);
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  for (cplx& x : a) x = cplx(g(s), g(s));
  return a;
}

template <bool Omp>
void BM_apply_1q(benchmark::State& st) {
  const unsigned n = static_cast<unsigned>(st.range(0));
  auto a = random_amps(n);
  const qsprep::Mat2 h = qsprep::gates::h();
  for (auto _ : st) {
    for (unsigned pos = 0; pos < n; ++pos) {
      if constexpr (Omp)
        qsprep::kernels::omp::apply_1q(a, pos, h);
      else
        qsprep::kernels::serial::apply_1q(a, pos, h);
    }
    benchmark::DoNotOptimize(a.data());
  }
  st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(a.size()));
}

template <bool Omp>
void BM_cswap(benchmark::State& st) {
  const unsigned n = static_cast<unsigned>(st.range(0));
  auto a = random_amps(n);
  const qsprep::kernels::Condition ctl{std::size_t{1} << (n - 1), std::size_t{1} << (n - 1)};
  for (auto _ : st) {
    for (unsigned k = 0; k + 1 < n - 1; k += 2) {
      if constexpr (Omp)
        qsprep::kernels::omp::swap_bits(a, ctl, k, k + 1);
      else
        qsprep::kernels::serial::swap_bits(a, ctl, k, k + 1);
    }
    benchmark::DoNotOptimize(a.data());
  }
}

template <bool Omp>
void BM_projected_norm(benchmark::State& st) {
  const unsigned n = static_cast<unsigned>(st.range(0));
  auto a = random_amps(n);
  const qsprep::Vec2 plus = qsprep::kets::plus();
  for (auto _ : st) {
    double p;
    if constexpr (Omp)
      p = qsprep::kernels::omp::projected_norm_sq(a, 0, plus);
    else
      p = qsprep::kernels::serial::projected_norm_sq(a, 0, plus);
    benchmark::DoNotOptimize(p);
  }
}

template <qsprep::Execution Exec>
void BM_trials(benchmark::State& st) {
  qsprep::ScalingExperiment exp;
  exp.trials = 200;
  exp.c0 = qsprep::C0Policy::constant(1);
  for (auto _ : st) {
    auto t = qsprep::run_trials(exp, static_cast<unsigned>(st.range(0)), Exec);
    benchmark::DoNotOptimize(t.data());
  }
}

}  // namespace

BENCHMARK(BM_apply_1q<false>)->Name("apply_1q/serial")->DenseRange(14, 20, 3);
BENCHMARK(BM_apply_1q<true>)->Name("apply_1q/omp")->DenseRange(14, 20, 3);
BENCHMARK(BM_cswap<false>)->Name("cswap/serial")->DenseRange(14, 20, 3);
BENCHMARK(BM_cswap<true>)->Name("cswap/omp")->DenseRange(14, 20, 3);
BENCHMARK(BM_projected_norm<false>)->Name("projected_norm/serial")->DenseRange(14, 20, 3);
BENCHMARK(BM_projected_norm<true>)->Name("projected_norm/omp")->DenseRange(14, 20, 3);
BENCHMARK(BM_trials<qsprep::Execution::serial>)->Name("trials/serial")->Arg(8);
BENCHMARK(BM_trials<qsprep::Execution::openmp>)->Name("trials/omp")->Arg(8);

BENCHMARK_MAIN();
