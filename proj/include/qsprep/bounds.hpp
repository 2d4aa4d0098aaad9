// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qsprep/label_encoding.hpp"
#include "qsprep/rng.hpp"

namespace qsprep {

enum class SamplingCase { uniform_case1, gaussian_case2 };

struct SamplingModel {
  SamplingCase kind = SamplingCase::gaussian_case2;
  std::size_t entries = 2;  // N
  std::uint64_t seed = 0;
};

// Raw draw a: case 1 a_i = b_i e^{i phi_i}, b ~ U[-1,1], phi ~ U[0,pi];
// case 2 real and imaginary parts standard normal.
std::vector<cplx> sample_raw(const SamplingModel& m, RngStream& rng);
// a / ||a||, or |a| / ||a|| when `positive`.
AmplitudeVector normalize_draw(const std::vector<cplx>& a, bool positive);
AmplitudeVector sample(const SamplingModel& m, RngStream& rng, bool positive = false);

// Explicit lower-bound constants.
double result4_bound_ps(SamplingCase c, std::size_t entries, double delta);
double result4_bound_ps_prime(SamplingCase c, std::size_t entries, double delta);

struct Result4Trial {
  double p_s = 0.0;        // positive draw |a|
  double p_s_prime = 0.0;  // complex draw a
  double max_abs_sq = 0.0;
};

struct Result4Report {
  SamplingCase kind = SamplingCase::gaussian_case2;
  std::size_t entries = 0;
  std::int64_t trials = 0;
  double delta = 0.0;
  double bound_ps = 0.0;
  double bound_ps_prime = 0.0;
  double violation_ps = 0.0;        // fraction with p_s below its bound
  double violation_ps_prime = 0.0;
  double tail_threshold = 0.0;      // 2 log(2N/delta)
  double tail_frequency = 0.0;      // fraction with max|a_i|^2 >= threshold
  double sigma_delta = 0.0;         // binomial radius at delta
  double sigma_half_delta = 0.0;    // binomial radius at delta/2
  bool pass_ps = false;
  bool pass_ps_prime = false;
  bool pass_tail = false;           // case 2 only; true for case 1
  std::vector<Result4Trial> per_trial;
};

Result4Report verify_result4(const SamplingModel& m, std::int64_t trials, double delta);

struct CutoffPlan {
  double u_cut = 1.0;
  double epsilon_th = 0.0;
  double delta = 0.0;

  // u_cut^2 = (8/N)(4/delta)^(1/N) log(12/(epsilon_th delta))
  static CutoffPlan derived(std::size_t entries, double epsilon_th, double delta);
};

// arg(u_i) min(|u_i| / u_cut, 1)
ResizedVector cutoff_vector(const AmplitudeVector& u, const CutoffPlan& plan);
// |<phi(vtilde)|phi(u)>|^2
double fidelity(const AmplitudeVector& u, const ResizedVector& vtilde);

// Printed form (delta/4)^(2/N) / (96 log(8/(eps delta)) log(4/delta)).
double cp_closed_form(std::size_t entries, double epsilon_th, double delta);
// (delta/4)^(1/N) / (12 N u_cut^2 log(4/delta)) with the derived u_cut.
double cp_from_chain(std::size_t entries, double epsilon_th, double delta);
// delta^(2/N) / (log(1/delta) log(1/(delta eps))), constants dropped.
double cp_omega_form(std::size_t entries, double epsilon_th, double delta);
// Markov step for the fidelity lemma: N mean(Delta) / (N eps x^2 / 2) with
// x^2 = (delta/4)^(1/N) / 2 and the exact mean(Delta).
double markov_tail_term(std::size_t entries, double epsilon_th, double delta);

struct Result5Trial {
  double p_s = 0.0;
  double fidelity = 0.0;
};

struct Result5Report {
  std::size_t entries = 0;
  std::int64_t trials = 0;
  double epsilon_th = 0.0;
  double delta = 0.0;
  double u_cut = 0.0;
  double cp = 0.0;
  double cp_chain = 0.0;
  double cp_omega = 0.0;
  double markov_term = 0.0;
  double fidelity_pass = 0.0;   // fraction with F >= 1 - eps
  double ps_pass = 0.0;         // fraction with p_s >= C_p
  double joint_pass = 0.0;
  double sigma_half_delta = 0.0;
  double sigma_delta = 0.0;
  bool pass_fidelity = false;   // >= 1 - delta/2 - 3 sigma
  bool pass_ps = false;         // >= 1 - delta/2 - 3 sigma
  bool pass_joint = false;      // >= 1 - delta - 3 sigma
  std::vector<Result5Trial> per_trial;
};

// Case-2 draws; p_s is the value projection probability of |vtilde|.
Result5Report verify_result5(double epsilon_th, double delta, std::size_t entries, std::int64_t trials,
                             std::uint64_t seed);

// Moment-generating and mean evaluations used in the bound derivations.
namespace chernoff {

// |a|^2 with a complex standard normal (mean 2).
double mgf_neg_abs_sq(double t);  // mean e^{-t|a|^2} = 1/(1+2t)
double mgf_pos_abs_sq(double t);  // mean e^{t|a|^2} = 1/(1-2t), t < 1/2
// v uniform on [0, 1].
double mgf_neg_v_sq(double t);    // mean e^{-t v^2}
double mgf_label(double t);       // mean e^{t (v^2 + (1-v)^2)}
// Delta = |a| max(0, |a| - c).
double mean_delta(double c);
double mean_delta_bound(double c);  // 2 e^{-c^2/2}
// Delta' = min(|a|^2, K).
double mgf_neg_delta_prime(double t, double k);
double mean_delta_prime(double k);
double erfi(double x);

}  // namespace chernoff

}  // namespace qsprep
