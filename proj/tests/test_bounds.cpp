// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "qsprep/bounds.hpp"
#include "qsprep/concat.hpp"
#include "qsprep/error.hpp"
#include "qsprep/rng.hpp"

namespace qsprep {
namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;

template <class F>
double on_interval(F f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// |a| for a complex standard normal has density r e^{-r^2/2}.
template <class F>
double rayleigh_mean(F f, double from = 0.0) {
  exp_sinh<double> q;
  return q.integrate([&](double r) { return r > 60 ? 0.0 : f(r) * r * std::exp(-r * r / 2); }, from,
                     std::numeric_limits<double>::infinity());
}

TEST(Chernoff, AbsSquareMgf) {
  for (double t : {0.1, 0.3, 1.0, 4.0})
    EXPECT_NEAR(chernoff::mgf_neg_abs_sq(t), rayleigh_mean([t](double r) { return std::exp(-t * r * r); }), 1e-10);
  for (double t : {0.05, 0.2, 0.4})
    EXPECT_NEAR(chernoff::mgf_pos_abs_sq(t),
                exp_sinh<double>().integrate([t](double r) { return r * std::exp((t - 0.5) * r * r); }, 0.0,
                                             std::numeric_limits<double>::infinity()),
                1e-9);
}

TEST(Chernoff, UniformMgfs) {
  for (double t : {0.01, 0.5, 2.0, 7.0}) {
    EXPECT_NEAR(chernoff::mgf_neg_v_sq(t), on_interval([t](double v) { return std::exp(-t * v * v); }, 0, 1), 1e-12);
    EXPECT_NEAR(chernoff::mgf_label(t),
                on_interval([t](double v) { return std::exp(t * (v * v + (1 - v) * (1 - v))); }, 0, 1),
                1e-10 * chernoff::mgf_label(t));
  }
}

TEST(Chernoff, Erfi) {
  for (double x : {0.0, 0.1, 0.7, 1.5, 3.0}) {
    const double ref = 2 / std::sqrt(std::numbers::pi) * (x == 0 ? 0 : on_interval([](double s) { return std::exp(s * s); }, 0, x));
    EXPECT_NEAR(chernoff::erfi(x), ref, 1e-12 * std::max(1.0, ref));
  }
  EXPECT_NEAR(chernoff::erfi(-0.7), -chernoff::erfi(0.7), 1e-15);
}

TEST(Chernoff, MeanDelta) {
  for (double c : {0.0, 0.5, 1.3, 3.0, 5.0}) {
    const double ref = rayleigh_mean([c](double r) { return r * (r - c); }, c);
    EXPECT_NEAR(chernoff::mean_delta(c), ref, 1e-10 * std::max(ref, 1e-6));
    EXPECT_LE(chernoff::mean_delta(c), chernoff::mean_delta_bound(c) + 1e-15);
  }
}

TEST(Chernoff, DeltaPrime) {
  for (double k : {0.5, 2.0, 6.0}) {
    // split at the kink r = sqrt(k)
    const double rk = std::sqrt(k);
    auto split = [&](auto f) {
      return on_interval([&](double r) { return f(r) * r * std::exp(-r * r / 2); }, 0, rk) + rayleigh_mean(f, rk);
    };
    EXPECT_NEAR(chernoff::mean_delta_prime(k), split([k](double r) { return std::min(r * r, k); }), 1e-10);
    for (double t : {0.2, 1.0})
      EXPECT_NEAR(chernoff::mgf_neg_delta_prime(t, k),
                  split([t, k](double r) { return std::exp(-t * std::min(r * r, k)); }), 1e-10);
  }
}

TEST(Sampling, Moments) {
  RngStream rng(42);
  double s1 = 0, s2 = 0;
  const int draws = 4000;
  for (int k = 0; k < draws; ++k) {
    for (cplx x : sample_raw({SamplingCase::uniform_case1, 4, 0}, rng)) s1 += std::norm(x);
    for (cplx x : sample_raw({SamplingCase::gaussian_case2, 4, 0}, rng)) s2 += std::norm(x);
  }
  // E|b|^2 = 1/3 with variance 4/45; E|a|^2 = 2 with variance 4
  EXPECT_NEAR(s1 / (4 * draws), 1.0 / 3, 4 * std::sqrt(4.0 / 45 / (4 * draws)));
  EXPECT_NEAR(s2 / (4 * draws), 2.0, 4 * std::sqrt(4.0 / (4 * draws)));
  const AmplitudeVector u = sample({SamplingCase::gaussian_case2, 8, 0}, rng, true);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_GE(u[i].real(), 0.0);
  EXPECT_THROW(sample_raw({SamplingCase::gaussian_case2, 6, 0}, rng), ValidationError);
}

TEST(Result4, PerTrialProbabilitiesMatchStatevector) {
  for (auto kind : {SamplingCase::uniform_case1, SamplingCase::gaussian_case2})
    for (std::size_t entries : {2u, 4u, 8u}) {
      const SamplingModel m{kind, entries, 17};
      const Result4Report r = verify_result4(m, 100, 0.1);
      for (std::int64_t k = 0; k < 10; ++k) {
        RngStream s(derive_key(17, {static_cast<std::uint64_t>(k)}));
        const std::vector<cplx> a = sample_raw(m, s);
        const ResizedVector vp = resize(normalize_draw(a, true));
        EXPECT_NEAR(r.per_trial[k].p_s, project_value_qubit(encode(vp)).simulated_prob, 1e-10);
        const ComplexDecomposition d = decompose_complex(resize(normalize_draw(a, false)));
        const ComplexAssembly ca = assemble_complex_outcome(d, {encode(d.va), encode(d.vb), encode(d.vc), encode(d.vd)});
        EXPECT_NEAR(r.per_trial[k].p_s_prime, ca.simulated_prob, 1e-10);
      }
    }
}

TEST(Result4, BoundsHold) {
  for (auto kind : {SamplingCase::uniform_case1, SamplingCase::gaussian_case2}) {
    const Result4Report r = verify_result4({kind, 16, 3}, 400, 0.1);
    EXPECT_TRUE(r.pass_ps);
    EXPECT_TRUE(r.pass_ps_prime);
    EXPECT_TRUE(r.pass_tail);
    const double x = 0.2 * std::pow(0.05, 2.0 / 16);
    const double scale = kind == SamplingCase::uniform_case1 ? 1 - x : 1.0;
    EXPECT_NEAR(r.bound_ps_prime, r.bound_ps * scale / 64, 1e-15);
  }
  EXPECT_THROW(verify_result4({SamplingCase::gaussian_case2, 4, 0}, 50, 0.1), ValidationError);
}

TEST(Cutoff, Examples) {
  const AmplitudeVector u({0.6, cplx(0, 0.8)});
  const ResizedVector v = cutoff_vector(u, {0.7, 0.1, 0.1});
  EXPECT_NEAR(std::abs(v[0] - 0.6 / 0.7), 0, 1e-15);
  EXPECT_NEAR(std::abs(v[1] - cplx(0, 1)), 0, 1e-15);
  const ResizedVector w = cutoff_vector(u, {2.0, 0.1, 0.1});
  EXPECT_NEAR(std::abs(w[1] - cplx(0, 0.4)), 0, 1e-15);
  EXPECT_NEAR(fidelity(u, w), 1.0, 1e-15);
  const double n = 64, eps = 0.05, delta = 0.1;
  EXPECT_NEAR(CutoffPlan::derived(64, eps, delta).u_cut,
              std::sqrt(8 / n * std::pow(4 / delta, 1 / n) * std::log(12 / (eps * delta))), 1e-15);
  EXPECT_THROW(CutoffPlan::derived(64, 0, delta), ValidationError);
}

TEST(Fidelity, Properties) {
  const AmplitudeVector u({0.6, cplx(0, 0.8)});
  const double f = fidelity(u, ResizedVector({0.3, 0.2}));
  const AmplitudeVector ru({0.6 * std::polar(1.0, 0.4), cplx(0, 0.8) * std::polar(1.0, 0.4)});
  EXPECT_NEAR(fidelity(ru, ResizedVector({0.3, 0.2})), f, 1e-15);
  // 0.18^2 + 0.16^2 over 0.13
  EXPECT_NEAR(f, (0.18 * 0.18 + 0.16 * 0.16) / 0.13, 1e-14);
  EXPECT_NEAR(fidelity(AmplitudeVector({1.0, 0.0, 0.0, 0.0}), ResizedVector({0.0, 0.5, 0.5, 0.0})), 0.0, 1e-15);
}

TEST(Cp, ChainAndPrintedForms) {
  for (std::size_t n : {4u, 64u, 1024u})
    for (double eps : {0.01, 0.1})
      for (double delta : {0.05, 0.2}) {
        const double ratio = cp_from_chain(n, eps, delta) / cp_closed_form(n, eps, delta);
        EXPECT_NEAR(ratio, std::log(8 / (eps * delta)) / std::log(12 / (eps * delta)), 1e-12);
        const double l = std::log(8 / (eps * delta)), l4 = std::log(4 / delta);
        EXPECT_NEAR(cp_closed_form(n, eps, delta), std::pow(delta / 4, 2.0 / n) / (96 * l * l4), 1e-16);
      }
}

TEST(Markov, TailTermIsSmall) {
  // exp(-N u_cut^2 x^2 / 2) = (eps delta / 12)^2 so the Markov term is below delta/2
  for (std::size_t n : {16u, 256u})
    for (double eps : {0.02, 0.1}) EXPECT_LT(markov_tail_term(n, eps, 0.1), 0.05);
}

TEST(Result5, SmallRun) {
  const Result5Report r = verify_result5(0.1, 0.1, 16, 300, 5);
  EXPECT_TRUE(r.pass_fidelity);
  EXPECT_TRUE(r.pass_ps);
  EXPECT_TRUE(r.pass_joint);
  for (const Result5Trial& t : r.per_trial) {
    EXPECT_GT(t.fidelity, 0.0);
    EXPECT_LE(t.fidelity, 1.0);
  }
}

}  // namespace
}  // namespace qsprep
