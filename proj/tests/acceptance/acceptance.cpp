// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
//
// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qsprep/bounds.hpp"
#include "qsprep/cascade.hpp"
#include "qsprep/circuit.hpp"
#include "qsprep/concat.hpp"
#include "qsprep/format.hpp"
#include "qsprep/label_encoding.hpp"
#include "qsprep/lightcone.hpp"
#include "qsprep/prep.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/stats.hpp"

using namespace qsprep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::vector<double> positive(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(g);
  v[std::uniform_int_distribution<std::size_t>(0, n - 1)(g)] = 1.0;
  return v;
}

// Uniform on the unit disk, one entry pinned to modulus 1.
std::vector<cplx> disk(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> v(n);
  for (cplx& x : v) x = std::polar(std::sqrt(u(g)), 2 * M_PI * u(g));
  v[0] = std::polar(1.0, 2 * M_PI * u(g));
  return v;
}

Outcome end_to_end() {
  double worst = 1.0;
  int runs = 0;
  for (unsigned n = 2; n <= 4; ++n)
    for (auto kind : {SamplingCase::uniform_case1, SamplingCase::gaussian_case2})
      for (bool pos : {true, false})
        for (std::uint64_t k = 0; k < 200; ++k) {
          RngStream s(derive_key(0xe2e, {n, static_cast<std::uint64_t>(kind), pos, k}));
          const AmplitudeVector u = sample({kind, std::size_t{1} << n, 0}, s, pos);
          PrepConfig c;
          c.seed = derive_key(0xe2e, {n, k});
          const AmplitudePrepResult r = prepare_amplitude(u, c);
          if (r.complex_path == pos) return {false, "wrong path for n=" + std::to_string(n)};
          worst = std::min(worst, r.fidelity);
          ++runs;
        }
  return {worst >= 1 - 1e-9, std::to_string(runs) + " runs, min fidelity " + format_double(worst)};
}

Outcome pplus_law() {
  std::mt19937_64 g(0x9151);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t len = std::size_t{1} << (1 + k % 4);  // inputs of n <= 4 qubits in total
    const bool cx = k % 2;
    const ResizedVector a = cx ? ResizedVector(disk(g, len)) : ResizedVector::real(positive(g, len));
    const ResizedVector b = cx ? ResizedVector(disk(g, len)) : ResizedVector::real(positive(g, len));
    const ConcatOutcome o = concatenate_outcome(encode(a), encode(b));
    worst = std::max(worst, std::abs(compute_p_plus(a.label_norm_sq(), b.label_norm_sq(), len) - o.simulated_prob));
  }
  int bad_pos = 0, bad_cx = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::size_t len = std::size_t{1} << (1 + k % 8);
    const double pp = compute_p_plus(ResizedVector::real(positive(g, len)).label_norm_sq(),
                                     ResizedVector::real(positive(g, len)).label_norm_sq(), len);
    bad_pos += !(pp >= 0.5 - 1e-15 && pp <= 1 + 1e-15);
    const double pc = compute_p_plus(ResizedVector(disk(g, len)).label_norm_sq(),
                                     ResizedVector(disk(g, len)).label_norm_sq(), len);
    bad_cx += !(pc >= 0.1 - 1e-15 && pc <= 1 + 1e-15);
  }
  return {worst <= 1e-10 && bad_pos == 0 && bad_cx == 0,
          "max |analytic - simulated| " + fmt(worst) + ", range violations " + std::to_string(bad_pos) + " positive, " +
              std::to_string(bad_cx) + " complex"};
}

Outcome slope_c0_one() {
  ScalingExperiment e;
  e.n_range = {4, 5, 6, 7, 8, 9, 10};
  e.trials = 1000;
  e.c0 = C0Policy::constant(1);
  e.pplus = PPlusModel::half();
  const FitReport r = run_scaling(e);
  return {!r.aborted && std::abs(r.slope - 1.52) <= 0.15,
          "beta_t " + fmt(r.slope) + " (stderr " + fmt(r.slope_stderr) + ", R^2 " + fmt(r.r_squared) + ")"};
}

Outcome supra() {
  std::string detail = "final-node frequency per pass:";
  bool ok = true;
  const double floor = 0.006;
  for (unsigned n = 4; n <= 12; ++n) {
    const std::int64_t passes = 2000;
    const FinalNodeStats s = final_node_stats(n, passes, derive_key(0x5a9a, {n}));
    const double sigma = stats::proportion_sigma(floor, static_cast<std::size_t>(passes));
    ok = ok && s.frequency >= floor - 3 * sigma;
    detail += " " + fmt(s.frequency);
  }
  ScalingExperiment e;
  e.n_range = {4, 5, 6, 7, 8, 9, 10, 11, 12};
  e.trials = 1000;
  e.bootstrap = 0;
  const SupraComparison c = supra_comparison(e);
  ok = ok && !c.means.aborted && c.quadratic.r_squared >= 0.98 && c.quadratic_wins();
  detail += "; a n^2 + b R^2 " + fmt(c.quadratic.r_squared) + ", SSE " + fmt(c.quadratic.sse) + " vs power law " +
            fmt(c.power_law.sse) + " (beta " + fmt(c.power_law.beta) + ")";
  return {ok, detail};
}

Outcome fig3() {
  ScalingExperiment t;
  t.n_range = {4, 5, 6, 7, 8, 9, 10};
  t.trials = 1000;
  t.bootstrap = 200;
  const auto curve = tradeoff_curve({1.0, 1.2, 1.4, 1.6, 1.8}, t);
  bool ok = true;
  std::string detail = "beta_t:";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    detail += " " + fmt(curve[k].fit.slope);
    if (k > 0) {
      const double se = std::max(curve[k].fit.slope_bootstrap_se, curve[k].fit.slope_stderr) +
                        std::max(curve[k - 1].fit.slope_bootstrap_se, curve[k - 1].fit.slope_stderr);
      ok = ok && curve[k].fit.slope - curve[k - 1].fit.slope <= se;
    }
  }
  return {ok, detail};
}

Outcome bound_suites() {
  bool ok = true;
  std::string detail;
  for (std::size_t entries : {64u, 256u}) {
    for (auto kind : {SamplingCase::uniform_case1, SamplingCase::gaussian_case2}) {
      const Result4Report r = verify_result4({kind, entries, derive_key(0xb4, {entries})}, 1000, 0.1);
      ok = ok && r.pass_ps && r.pass_ps_prime && r.pass_tail;
      detail += "N=" + std::to_string(entries) + (kind == SamplingCase::uniform_case1 ? " c1" : " c2") + " viol " +
                fmt(r.violation_ps) + "/" + fmt(r.violation_ps_prime) + "; ";
    }
    for (auto [eps, delta] : {std::pair{0.05, 0.1}, std::pair{0.1, 0.2}}) {
      const Result5Report r = verify_result5(eps, delta, entries, 1000, derive_key(0xb5, {entries}));
      ok = ok && r.pass_fidelity && r.pass_ps && r.pass_joint;
      detail += "F-pass " + fmt(r.fidelity_pass) + " p_s-pass " + fmt(r.ps_pass) + "; ";
    }
  }
  return {ok, detail};
}

Outcome depth_claims() {
  bool ok = true;
  const std::size_t step = concat_block_depth(2, true) - concat_block_depth(1, true);
  for (unsigned n = 2; n <= 10; ++n) ok = ok && concat_block_depth(n, true) - concat_block_depth(n - 1, true) == step;
  std::string detail = "block step " + std::to_string(step) + (ok ? " exact" : " NOT constant");

  std::mt19937_64 g(0xde97);
  std::vector<double> x, y;
  bool lc_ok = true;
  int checked = 0;
  for (unsigned n = 2; n <= 8; ++n) {
    const ResizedVector v = ResizedVector::real(positive(g, std::size_t{1} << n));
    const Network net = build_full_network(v, 1, true);
    x.push_back(static_cast<double>(n) * n);
    y.push_back(static_cast<double>(net.circuit.depth()));
    const LightconeCheck chk = check_network(net.circuit, net.output_register, v.size());
    lc_ok = lc_ok && chk.covers && chk.consistent;
    ++checked;
    if (n <= 4) {
      const Network para = build_full_network(v, 2, true);
      const LightconeCheck cp = check_network(para.circuit, para.output_register, v.size());
      lc_ok = lc_ok && (!cp.covers || cp.consistent);
      ++checked;
    }
  }
  const stats::LineFit fit = stats::fit_line(x, y);
  double shift = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) shift = std::max(shift, y[k] - (fit.slope * x[k] + fit.intercept));
  ok = ok && fit.r_squared >= 0.999 && lc_ok;
  detail += "; network depth <= " + fmt(fit.slope) + " n^2 + " + fmt(fit.intercept + shift) + " (R^2 " +
            fmt(fit.r_squared) + "); light cones consistent on " + std::to_string(checked) + " networks";
  return {ok, detail};
}

double binomial_p_value(const std::map<std::int64_t, std::int64_t>& hist, std::int64_t cmin, double p) {
  std::int64_t total = 0;
  for (auto [k, c] : hist) total += c;
  std::vector<double> obs(static_cast<std::size_t>(cmin + 1)), exp(obs.size());
  for (std::int64_t k = 0; k <= cmin; ++k) {
    const auto it = hist.find(k);
    obs[k] = it == hist.end() ? 0.0 : static_cast<double>(it->second);
    exp[k] = static_cast<double>(total) *
             std::exp(std::lgamma(cmin + 1.0) - std::lgamma(k + 1.0) - std::lgamma(cmin - k + 1.0) + k * std::log(p) +
                      (cmin - k) * std::log1p(-p));
  }
  return stats::chi_square_p_value(obs, exp);
}

Outcome properties() {
  std::string detail;
  bool ok = true;
  // Cascade: level-2 nodes see cmin = c0 on every pass.
  for (double p : {0.5, 0.75}) {
    std::map<std::int64_t, std::int64_t> hist;
    CascadeSpec s;
    s.n = 4;
    s.c0 = 16;
    s.pplus = PPlusModel::fixed(p);
    s.observer = [&](const NodeEvent& e) {
      if (e.level == 2 && e.cmin == 16) ++hist[e.c];
    };
    for (std::uint64_t k = 0; k < 2000; ++k) run_cascade(s, derive_key(0xb1, {k}));
    const double pv = binomial_p_value(hist, 16, p);
    ok = ok && pv > 1e-3;
    detail += "chi-square p(" + fmt(p) + ") " + fmt(pv) + "; ";
  }
  {
    std::mt19937_64 g(0xb2);
    const ResizedVector v = ResizedVector::real(positive(g, 4));
    std::map<std::int64_t, std::int64_t> hist;
    double pe = 0;
    for (std::uint64_t k = 0; k < 3000; ++k) {
      PrepConfig c;
      c.mode = PrepMode::parallel;
      c.c0 = C0Policy::constant(12);
      c.seed = k;
      prepare_label_observed(v, c, [&](const NodeEvent& e) {
        ++hist[e.c];
        pe = e.p;
      });
    }
    const double pv = binomial_p_value(hist, 12, pe);
    ok = ok && pv > 1e-3;
    detail += "exact engine p " + fmt(pv) + "; ";
  }

  double purity = 1.0, decode_err = 0.0;
  std::mt19937_64 g(0xb3);
  for (unsigned n = 1; n <= 6; ++n)
    for (auto mode : {PrepMode::sequential, PrepMode::parallel, PrepMode::g_para})
      for (int k = 0; k < 10; ++k) {
        const ResizedVector v = k % 2 ? ResizedVector::real(positive(g, std::size_t{1} << n))
                                      : ResizedVector(std::vector<cplx>(std::size_t{1} << n, 0.3));
        PrepConfig c;
        c.mode = mode;
        c.c0 = C0Policy::constant(2);
        c.seed = static_cast<std::uint64_t>(k);
        const PrepResult r = prepare_label(v, c);
        purity = std::min(purity, r.min_factor_purity);
        decode_err = std::max(decode_err, max_abs_diff(*r.decoded, v));
      }
  ok = ok && purity >= 1 - 1e-10 && decode_err <= 1e-10;
  detail += "min purity " + format_double(purity) + ", decode error " + fmt(decode_err) + "; ";

  int round_trips = 0;
  bool rt_ok = true;
  for (unsigned n = 1; n <= 4; ++n)
    for (const Circuit& c : {build_concat_circuit(n), build_complex_circuit(n), decompose(build_concat_circuit(n))}) {
      rt_ok = rt_ok && parse_circuit(emit(c)) == c;
      ++round_trips;
    }
  ok = ok && rt_ok;
  detail += std::to_string(round_trips) + " emit/parse round trips " + (rt_ok ? "exact" : "FAILED");
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"end-to-end exactness", end_to_end},
      {"concatenation success law", pplus_law},
      {"c0=1 runtime exponent", slope_c0_one},
      {"supra-linear copies runtime", supra},
      {"exponent vs copies shape", fig3},
      {"probability bound suites", bound_suites},
      {"depth claims", depth_claims},
      {"property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
