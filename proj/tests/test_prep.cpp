// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "qsprep/error.hpp"
#include "qsprep/prep.hpp"
#include "qsprep/rng.hpp"
#include "support.hpp"

namespace qsprep {
namespace {

PrepConfig config(PrepMode mode, std::uint64_t seed, Engine e = Engine::exact_statevector) {
  PrepConfig c;
  c.mode = mode;
  c.seed = seed;
  c.engine = e;
  return c;
}

ResizedVector random_v(std::uint64_t seed, unsigned n) {
  std::mt19937_64 g(seed);
  return ResizedVector::real(test::random_positive(g, std::size_t{1} << n));
}

void expect_same(const PrepResult& a, const PrepResult& b) {
  EXPECT_EQ(a.t_stp, b.t_stp);
  EXPECT_EQ(a.restarts, b.restarts);
  EXPECT_EQ(a.final_copies, b.final_copies);
  EXPECT_EQ(a.concat_attempts, b.concat_attempts);
  EXPECT_EQ(a.total_qubit_touches, b.total_qubit_touches);
  EXPECT_EQ(a.peak_parallel_copies, b.peak_parallel_copies);
  EXPECT_EQ(a.charged_work, b.charged_work);
}

TEST(FSeq, BaseCase) {
  const PrepResult r = f_seq(ResizedVector::real({1.0, 0.0}), config(PrepMode::sequential, 1));
  EXPECT_EQ(r.t_stp, 0);
  EXPECT_EQ(r.restarts, 0);
  EXPECT_LT(max_abs_diff(*r.decoded, ResizedVector::real({1.0, 0.0})), 1e-12);
}

TEST(FSeq, UniformIsDeterministic) {
  const PrepResult r = f_seq(ResizedVector::real({0.5, 0.5, 0.5, 0.5}), config(PrepMode::sequential, 9));
  EXPECT_EQ(r.t_stp, 1);
  EXPECT_EQ(r.restarts, 0);
}

TEST(FSeq, UniformChargesTriangularNumber) {
  // Every p+ = 1: charges 1 + 2 + ... + (n-1) along the critical path, but
  // sequential halves add up: t(n) = 2 t(n-1) + (n-1).
  for (unsigned n = 2; n <= 6; ++n) {
    const PrepResult r = f_seq(ResizedVector::real(std::vector<double>(std::size_t{1} << n, 0.5)),
                               config(PrepMode::sequential, 1, Engine::classical_cascade));
    std::int64_t t = 0;
    for (unsigned m = 2; m <= n; ++m) t = 2 * t + (m - 1);
    EXPECT_EQ(r.t_stp, t) << n;
    PrepConfig pc = config(PrepMode::parallel, 1, Engine::classical_cascade);
    const PrepResult p = prepare_label(ResizedVector::real(std::vector<double>(std::size_t{1} << n, 0.5)), pc);
    EXPECT_EQ(p.t_stp, static_cast<std::int64_t>(n * (n - 1) / 2)) << n;
  }
}

TEST(Exact, DecodesInEveryMode) {
  for (auto mode : {PrepMode::sequential, PrepMode::parallel, PrepMode::g_para, PrepMode::tradeoff})
    for (unsigned n = 1; n <= 5; ++n)
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const ResizedVector v = random_v(100 * n + seed, n);
        PrepConfig c = config(mode, seed);
        c.c0 = C0Policy::constant(3);
        c.n_u = std::min(2u, n);
        const PrepResult r = prepare_label(v, c);
        ASSERT_TRUE(r.decoded);
        EXPECT_LT(max_abs_diff(*r.decoded, v), 1e-10);
        EXPECT_GE(r.min_factor_purity, 1 - 1e-10);
      }
}

TEST(Exact, Determinism) {
  const ResizedVector v = random_v(7, 4);
  for (auto mode : {PrepMode::sequential, PrepMode::parallel, PrepMode::g_para}) {
    PrepConfig c = config(mode, 1234);
    c.c0 = C0Policy::constant(2);
    const PrepResult a = prepare_label(v, c), b = prepare_label(v, c);
    expect_same(a, b);
    EXPECT_EQ(test::max_diff({a.state->state.amplitudes().begin(), a.state->state.amplitudes().end()},
                            b.state->state.amplitudes()),
              0.0);
  }
}

TEST(Engines, SameStreamsSameRuntime) {
  // The exact engine samples from the simulated probability, the cascade
  // from the analytic one; they agree to 1e-10, so draws coincide.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ResizedVector v = random_v(seed, 4);
    for (auto mode : {PrepMode::sequential, PrepMode::parallel, PrepMode::g_para}) {
      PrepConfig c = config(mode, seed);
      c.c0 = C0Policy::constant(2);
      const PrepResult e = prepare_label(v, c);
      c.engine = Engine::classical_cascade;
      const PrepResult k = prepare_label(v, c);
      expect_same(e, k);
    }
  }
}

TEST(FPara, UniformNeverRestarts) {
  const ResizedVector v = ResizedVector::real(std::vector<double>(16, 0.5));
  for (std::int64_t c0 : {1, 2, 7}) {
    const PrepResult r = f_para(v, c0, config(PrepMode::parallel, 3));
    EXPECT_EQ(r.restarts, 0);
    EXPECT_EQ(r.final_copies, c0);
  }
}

TEST(GPara, FirstPassWithPPlusOne) {
  const ResizedVector v = ResizedVector::real(std::vector<double>(16, 0.5));
  const PrepResult r = g_para(v, 5, config(PrepMode::g_para, 3));
  EXPECT_EQ(r.restarts, 0);
  EXPECT_EQ(r.final_copies, 5);
  EXPECT_EQ(r.t_stp, 1 + 2 + 3);
}

TEST(Tradeoff, LeafSizeOneIsParallel) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ResizedVector v = random_v(seed + 50, 5);
    PrepConfig c = config(PrepMode::parallel, seed, Engine::classical_cascade);
    const PrepResult p = f_para(v, 3, c);
    const PrepResult t = f_tradeoff(v, 3, 1, c);
    expect_same(p, t);
  }
}

TEST(Tradeoff, FullLeafIsUnitary) {
  const ResizedVector v = random_v(1, 4);
  const PrepResult r = f_tradeoff(v, 2, 4, config(PrepMode::tradeoff, 1));
  EXPECT_EQ(r.concat_attempts, 0);
  EXPECT_EQ(r.t_stp, unitary_runtime(4));
  EXPECT_LT(max_abs_diff(*r.decoded, v), 1e-10);
  EXPECT_THROW(f_tradeoff(v, 2, 5, config(PrepMode::tradeoff, 1)), ValidationError);
}

TEST(Tradeoff, DepthFallsAsLeavesGrowPastSmallSizes) {
  // Unitary leaves cost 2^m - 2 layers, the concat blocks they replace cost
  // a linear number each; near n_u = n the unitary term dominates.
  const unsigned n = 10;
  EXPECT_GT(depth_report(n, n).total_depth, depth_report(n, n - 2).total_depth);
  EXPECT_GT(depth_report(n, n - 2).total_depth, depth_report(n, n - 4).total_depth);
}

TEST(Validation, Errors) {
  const PrepConfig c = config(PrepMode::sequential, 1);
  EXPECT_THROW(f_seq(ResizedVector({cplx(0, 0.5), 0.1}), c), ValidationError);
  EXPECT_THROW(f_para(random_v(1, 2), 0, c), ValidationError);
  EXPECT_THROW(C0Policy::parse("power:2.5"), ValidationError);
  EXPECT_THROW(C0Policy::parse("nope"), ValidationError);
  EXPECT_THROW(parse_mode("fast"), ValidationError);
  EXPECT_EQ(C0Policy::parse("const:4").copies(8), 4);
  EXPECT_EQ(C0Policy::parse("power:1.5").copies(16), 4);
  EXPECT_EQ(C0Policy::parse("supra").copies(16), 16 + 8);
  EXPECT_EQ(PPlusModel::parse("fixed:0.25").p, 0.25);
}

TEST(RetryCap, Aborts) {
  PrepConfig c = config(PrepMode::sequential, 1, Engine::classical_cascade);
  c.pplus = PPlusModel::fixed(1e-9);
  c.retry_cap = 1000;
  EXPECT_THROW(f_seq(random_v(1, 3), c), RetryCapExceeded);
  c.mode = PrepMode::g_para;
  EXPECT_THROW(g_para(random_v(1, 3), 1, c), RetryCapExceeded);
}

TEST(Instrumentation, SequentialPeak) {
  EXPECT_EQ(f_seq(random_v(1, 1), config(PrepMode::sequential, 1)).peak_block_qubits, 2u);
  for (unsigned n = 2; n <= 5; ++n) {
    const PrepResult r = f_seq(random_v(n, n), config(PrepMode::sequential, n));
    EXPECT_EQ(r.peak_block_qubits, 2 * n + 1);
    EXPECT_GE(r.peak_live_qubits, r.peak_block_qubits);
  }
}

TEST(Instrumentation, ParallelCopies) {
  const PrepResult r = f_para(random_v(3, 4), 5, config(PrepMode::parallel, 3, Engine::classical_cascade));
  EXPECT_EQ(r.peak_parallel_copies, 5 * 8);
}

// E t(m) = 2 (2 E t(m-1) + m - 1) when every attempt succeeds with 1/2.
TEST(FSeq, WorstCaseMeanMatchesRecurrence) {
  std::vector<double> expected{0, 0};
  for (unsigned m = 2; m <= 6; ++m) expected.push_back(2 * (2 * expected.back() + (m - 1)));
  for (unsigned n = 2; n <= 6; ++n) {
    double s = 0, s2 = 0;
    const int trials = 1000;
    for (int k = 0; k < trials; ++k) {
      PrepConfig c = config(PrepMode::sequential, derive_key(77, {n, std::uint64_t(k)}), Engine::classical_cascade);
      c.pplus = PPlusModel::half();
      const double t = static_cast<double>(f_seq(random_v(1, n), c).t_stp);
      s += t;
      s2 += t * t;
    }
    const double mean = s / trials, sd = std::sqrt((s2 - s * mean) / (trials - 1));
    EXPECT_NEAR(mean, expected[n], 4 * sd / std::sqrt(trials) + 1e-9) << n;
  }
}

// Binomial(c_min, p) at an internal node, by chi-square against a test-side pmf.
double chi_square_binomial(const std::map<std::int64_t, std::int64_t>& hist, std::int64_t cmin, double p,
                           std::int64_t total, int* dof) {
  double chi = 0;
  int bins = 0;
  double pooled_obs = 0, pooled_exp = 0;
  for (std::int64_t k = 0; k <= cmin; ++k) {
    const double pmf = std::exp(std::lgamma(cmin + 1.0) - std::lgamma(k + 1.0) - std::lgamma(cmin - k + 1.0) +
                                k * std::log(p) + (cmin - k) * std::log1p(-p));
    const auto it = hist.find(k);
    pooled_obs += it == hist.end() ? 0 : static_cast<double>(it->second);
    pooled_exp += pmf * static_cast<double>(total);
    if (pooled_exp >= 5) {
      chi += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
      ++bins;
      pooled_obs = pooled_exp = 0;
    }
  }
  if (pooled_exp > 0) chi += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / std::max(pooled_exp, 1e-300);
  *dof = bins - 1;
  return chi;
}

TEST(FPara, ExactEngineNodeCountsAreBinomial) {
  const ResizedVector v = random_v(11, 2);
  const std::int64_t c0 = 12;
  std::map<std::int64_t, std::int64_t> hist;
  double p = 0;
  std::int64_t total = 0;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    PrepConfig c = config(PrepMode::parallel, seed);
    c.c0 = C0Policy::constant(c0);
    prepare_label_observed(v, c, [&](const NodeEvent& e) {
      if (e.level == 2) {
        ++hist[e.c];
        ++total;
        p = e.p;
      }
    });
  }
  int dof = 0;
  const double chi = chi_square_binomial(hist, c0, p, total, &dof);
  // 99.9% quantile of chi-square with <= 12 degrees of freedom is below 33
  EXPECT_LT(chi, 33.0) << "dof " << dof;
}

}  // namespace
}  // namespace qsprep
