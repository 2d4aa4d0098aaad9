// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qsprep/concat.hpp"
#include "qsprep/error.hpp"
#include "qsprep/stats.hpp"

namespace qsprep {

std::vector<cplx> sample_raw(const SamplingModel& m, RngStream& rng) {
  if (m.entries < 2 || (m.entries & (m.entries - 1)) != 0) throw ValidationError("N must be a power of two >= 2");
  std::vector<cplx> a(m.entries);
  if (m.kind == SamplingCase::uniform_case1) {
    std::uniform_real_distribution<double> b(-1.0, 1.0), phi(0.0, std::numbers::pi);
    for (cplx& x : a) {
      const double r = b(rng);
      x = std::polar(1.0, phi(rng)) * r;
    }
  } else {
    std::normal_distribution<double> g(0.0, 1.0);
    for (cplx& x : a) {
      const double re = g(rng);
      x = cplx(re, g(rng));
    }
  }
  return a;
}

AmplitudeVector normalize_draw(const std::vector<cplx>& a, bool positive) {
  if (!positive) return AmplitudeVector::normalized(a);
  std::vector<cplx> m(a.size());
  std::transform(a.begin(), a.end(), m.begin(), [](cplx x) { return cplx(std::abs(x), 0.0); });
  return AmplitudeVector::normalized(std::move(m));
}

AmplitudeVector sample(const SamplingModel& m, RngStream& rng, bool positive) {
  return normalize_draw(sample_raw(m, rng), positive);
}

double result4_bound_ps(SamplingCase c, std::size_t entries, double delta) {
  const double n = static_cast<double>(entries);
  if (c == SamplingCase::uniform_case1) {
    const double x = 0.2 * std::pow(delta / 2.0, 2.0 / n);
    return x / (1.0 - x);
  }
  return std::pow(delta / 2.0, 1.0 / n) / (4.0 * std::log(2.0 * n / delta));
}

double result4_bound_ps_prime(SamplingCase c, std::size_t entries, double delta) {
  const double n = static_cast<double>(entries);
  if (c == SamplingCase::uniform_case1) return 0.2 * std::pow(delta / 2.0, 2.0 / n) / 64.0;
  return result4_bound_ps(c, entries, delta) / 64.0;
}

Result4Report verify_result4(const SamplingModel& m, std::int64_t trials, double delta) {
  if (trials < 100) throw ValidationError("trials must be >= 100");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  Result4Report r;
  r.kind = m.kind;
  r.entries = m.entries;
  r.trials = trials;
  r.delta = delta;
  r.bound_ps = result4_bound_ps(m.kind, m.entries, delta);
  r.bound_ps_prime = result4_bound_ps_prime(m.kind, m.entries, delta);
  r.tail_threshold = 2.0 * std::log(2.0 * static_cast<double>(m.entries) / delta);
  r.per_trial.resize(static_cast<std::size_t>(trials));

#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < trials; ++k) {
    RngStream s(derive_key(m.seed, {static_cast<std::uint64_t>(k)}));
    const std::vector<cplx> a = sample_raw(m, s);
    Result4Trial& t = r.per_trial[static_cast<std::size_t>(k)];
    for (cplx x : a) t.max_abs_sq = std::max(t.max_abs_sq, std::norm(x));
    t.p_s = value_success_prob(resize(normalize_draw(a, true)));
    t.p_s_prime = complex_success_prob(decompose_complex(resize(normalize_draw(a, false))));
  }

  std::int64_t v1 = 0, v2 = 0, tail = 0;
  for (const Result4Trial& t : r.per_trial) {
    v1 += t.p_s < r.bound_ps;
    v2 += t.p_s_prime < r.bound_ps_prime;
    tail += t.max_abs_sq >= r.tail_threshold;
  }
  const double n = static_cast<double>(trials);
  r.violation_ps = v1 / n;
  r.violation_ps_prime = v2 / n;
  r.tail_frequency = tail / n;
  r.sigma_delta = stats::proportion_sigma(delta, static_cast<std::size_t>(trials));
  r.sigma_half_delta = stats::proportion_sigma(delta / 2.0, static_cast<std::size_t>(trials));
  r.pass_ps = r.violation_ps <= delta + 3.0 * r.sigma_delta;
  r.pass_ps_prime = r.violation_ps_prime <= delta + 3.0 * r.sigma_delta;
  r.pass_tail = m.kind == SamplingCase::uniform_case1 || r.tail_frequency <= delta / 2.0 + 3.0 * r.sigma_half_delta;
  return r;
}

CutoffPlan CutoffPlan::derived(std::size_t entries, double epsilon_th, double delta) {
  if (!(epsilon_th > 0.0 && epsilon_th < 1.0)) throw ValidationError("epsilon_th must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  const double n = static_cast<double>(entries);
  const double u2 = 8.0 / n * std::pow(4.0 / delta, 1.0 / n) * std::log(12.0 / (epsilon_th * delta));
  return {std::sqrt(u2), epsilon_th, delta};
}

ResizedVector cutoff_vector(const AmplitudeVector& u, const CutoffPlan& plan) {
  if (!(plan.u_cut > 0.0)) throw ValidationError("u_cut must be positive");
  std::vector<cplx> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double mod = std::abs(u[i]);
    v[i] = mod == 0.0 ? cplx(0.0) : u[i] / mod * std::min(mod / plan.u_cut, 1.0);
  }
  return ResizedVector(std::move(v));
}

double fidelity(const AmplitudeVector& u, const ResizedVector& vtilde) {
  if (u.size() != vtilde.size()) throw ValidationError("dimension mismatch");
  const double s = vtilde.sum_sq();
  if (s == 0.0) throw ValidationError("zero vector");
  cplx ip = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) ip += std::conj(vtilde[i]) * u[i];
  return std::min(1.0, std::norm(ip) / s);
}

double cp_closed_form(std::size_t entries, double epsilon_th, double delta) {
  const double n = static_cast<double>(entries);
  return std::pow(delta / 4.0, 2.0 / n) / (96.0 * std::log(8.0 / (epsilon_th * delta)) * std::log(4.0 / delta));
}

double cp_from_chain(std::size_t entries, double epsilon_th, double delta) {
  const double n = static_cast<double>(entries);
  const double u = CutoffPlan::derived(entries, epsilon_th, delta).u_cut;
  return std::pow(delta / 4.0, 1.0 / n) / (12.0 * n * u * u * std::log(4.0 / delta));
}

double cp_omega_form(std::size_t entries, double epsilon_th, double delta) {
  const double n = static_cast<double>(entries);
  return std::pow(delta, 2.0 / n) / (std::log(1.0 / delta) * std::log(1.0 / (delta * epsilon_th)));
}

double markov_tail_term(std::size_t entries, double epsilon_th, double delta) {
  const double n = static_cast<double>(entries);
  const double x2 = std::pow(delta / 4.0, 1.0 / n) / 2.0;
  const double u = CutoffPlan::derived(entries, epsilon_th, delta).u_cut;
  const double c = u * std::sqrt(n * x2);
  return 2.0 * chernoff::mean_delta(c) / (epsilon_th * x2);
}

Result5Report verify_result5(double epsilon_th, double delta, std::size_t entries, std::int64_t trials,
                             std::uint64_t seed) {
  if (trials < 100) throw ValidationError("trials must be >= 100");
  const CutoffPlan plan = CutoffPlan::derived(entries, epsilon_th, delta);
  Result5Report r;
  r.entries = entries;
  r.trials = trials;
  r.epsilon_th = epsilon_th;
  r.delta = delta;
  r.u_cut = plan.u_cut;
  r.cp = cp_closed_form(entries, epsilon_th, delta);
  r.cp_chain = cp_from_chain(entries, epsilon_th, delta);
  r.cp_omega = cp_omega_form(entries, epsilon_th, delta);
  r.markov_term = markov_tail_term(entries, epsilon_th, delta);
  r.per_trial.resize(static_cast<std::size_t>(trials));
  const SamplingModel m{SamplingCase::gaussian_case2, entries, seed};

#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < trials; ++k) {
    RngStream s(derive_key(seed, {static_cast<std::uint64_t>(k)}));
    const AmplitudeVector u = sample(m, s);
    const ResizedVector vt = cutoff_vector(u, plan);
    std::vector<double> mod(vt.size());
    for (std::size_t i = 0; i < vt.size(); ++i) mod[i] = std::abs(vt[i]);
    Result5Trial& t = r.per_trial[static_cast<std::size_t>(k)];
    t.fidelity = fidelity(u, vt);
    t.p_s = value_success_prob(ResizedVector::real(mod));
  }

  std::int64_t f = 0, p = 0, j = 0;
  for (const Result5Trial& t : r.per_trial) {
    const bool fo = t.fidelity >= 1.0 - epsilon_th, po = t.p_s >= r.cp;
    f += fo;
    p += po;
    j += fo && po;
  }
  const double n = static_cast<double>(trials);
  r.fidelity_pass = f / n;
  r.ps_pass = p / n;
  r.joint_pass = j / n;
  r.sigma_half_delta = stats::proportion_sigma(delta / 2.0, static_cast<std::size_t>(trials));
  r.sigma_delta = stats::proportion_sigma(delta, static_cast<std::size_t>(trials));
  r.pass_fidelity = r.fidelity_pass >= 1.0 - delta / 2.0 - 3.0 * r.sigma_half_delta;
  r.pass_ps = r.ps_pass >= 1.0 - delta / 2.0 - 3.0 * r.sigma_half_delta;
  r.pass_joint = r.joint_pass >= 1.0 - delta - 3.0 * r.sigma_delta;
  return r;
}

namespace chernoff {

double mgf_neg_abs_sq(double t) { return 1.0 / (1.0 + 2.0 * t); }

double mgf_pos_abs_sq(double t) {
  if (!(t < 0.5)) throw ValidationError("t must be below 1/2");
  return 1.0 / (1.0 - 2.0 * t);
}

double mgf_neg_v_sq(double t) {
  if (t == 0.0) return 1.0;
  const double r = std::sqrt(t);
  return std::sqrt(std::numbers::pi) * std::erf(r) / (2.0 * r);
}

double mgf_label(double t) {
  if (t == 0.0) return 1.0;
  return std::exp(t / 2.0) * std::sqrt(std::numbers::pi / 2.0) * erfi(std::sqrt(t / 2.0)) / std::sqrt(t);
}

double mean_delta(double c) {
  return 2.0 * std::exp(-c * c / 2.0) - c * std::sqrt(std::numbers::pi / 2.0) * std::erfc(c / std::numbers::sqrt2);
}

double mean_delta_bound(double c) { return 2.0 * std::exp(-c * c / 2.0); }

double mgf_neg_delta_prime(double t, double k) {
  return (1.0 + 2.0 * t * std::exp(-k * (1.0 + 2.0 * t) / 2.0)) / (1.0 + 2.0 * t);
}

double mean_delta_prime(double k) { return 2.0 - 2.0 * std::exp(-k / 2.0); }

double erfi(double x) {
  const double x2 = x * x;
  double term = x, sum = x;
  for (int k = 1; k < 1000; ++k) {
    term *= x2 / k;
    const double add = term / (2 * k + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

}  // namespace chernoff

}  // namespace qsprep
