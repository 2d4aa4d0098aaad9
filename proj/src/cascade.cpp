// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "qsprep/error.hpp"
#include "qsprep/rng.hpp"

namespace qsprep {

namespace {

// Positive data for the analytic p+ model: |b_i| with b_i uniform on [-1, 1],
// rescaled so that the largest entry is 1.
ResizedVector random_positive(std::size_t entries, std::uint64_t key) {
  RngStream s(key);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(entries);
  for (double& e : x) e = u(s);
  const double mx = *std::max_element(x.begin(), x.end());
  if (mx == 0.0) x[0] = 1.0;
  for (double& e : x) e = mx > 0.0 ? e / mx : e;
  return ResizedVector::real(x);
}

CascadeSpec trial_spec(const ScalingExperiment& exp, unsigned n, std::uint64_t key) {
  CascadeSpec spec;
  spec.mode = exp.mode;
  spec.n = n;
  spec.n_leaf = exp.mode == PrepMode::tradeoff ? exp.n_u : 1;
  spec.c0 = exp.mode == PrepMode::sequential ? 1 : exp.c0.copies(std::size_t{1} << n);
  spec.pplus = exp.pplus;
  spec.retry_cap = exp.retry_cap;
  if (exp.pplus.kind == PPlusModel::Kind::analytic_from_vector) {
    const ResizedVector v = random_positive(std::size_t{1} << n, derive_key(key, {0xda7aULL}));
    const std::size_t width = std::size_t{1} << spec.n_leaf;
    for (std::size_t i = 0; i < v.size(); i += width) spec.leaf_norms.push_back(v.slice(i, width).label_norm_sq());
  }
  return spec;
}

// Runs body(k) for k in [0, count); rethrows the exception of the lowest
// failing index so that the outcome does not depend on the schedule.
template <class Body>
void for_trials(std::int64_t count, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  if (exec == Execution::openmp) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  } else {
    for (std::int64_t k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

stats::LineFit fit_means(const std::vector<PerN>& per_n) {
  std::vector<double> x, y;
  for (const PerN& p : per_n) {
    x.push_back(static_cast<double>(p.n));
    y.push_back(std::log2(p.mean));
  }
  return stats::fit_line(x, y);
}

double bootstrap_slope_se(const std::vector<PerN>& per_n, unsigned resamples, std::uint64_t seed) {
  if (resamples < 2) return 0.0;
  std::vector<double> slopes;
  std::vector<PerN> boot(per_n.size());
  for (unsigned b = 0; b < resamples; ++b) {
    for (std::size_t j = 0; j < per_n.size(); ++j) {
      const auto& xs = per_n[j].samples;
      RngStream s(derive_key(seed, {0xb0075ULL, b, per_n[j].n}));
      std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
      double sum = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) sum += xs[pick(s)];
      boot[j].n = per_n[j].n;
      boot[j].mean = sum / static_cast<double>(xs.size());
    }
    slopes.push_back(fit_means(boot).slope);
  }
  return stats::mean_std(slopes).std;
}

}  // namespace

std::vector<double> run_trials(const ScalingExperiment& exp, unsigned n, Execution exec) {
  if (exp.trials < 1) throw ValidationError("trials must be >= 1");
  if (n < 1 || n > 30) throw ValidationError("n out of range");
  std::vector<double> t(static_cast<std::size_t>(exp.trials));
  for_trials(exp.trials, exec, [&](std::int64_t k) {
    const std::uint64_t key = derive_key(exp.seed, {n, static_cast<std::uint64_t>(k)});
    t[static_cast<std::size_t>(k)] = static_cast<double>(run_cascade(trial_spec(exp, n, key), key).t_stp);
  });
  return t;
}

FitReport run_scaling(const ScalingExperiment& exp) {
  if (exp.n_range.size() < 3) throw ValidationError("n range needs at least 3 sizes");
  FitReport r;
  for (unsigned n : exp.n_range) {
    PerN p;
    p.n = n;
    p.entries = std::size_t{1} << n;
    p.c0 = exp.mode == PrepMode::sequential ? 1 : exp.c0.copies(p.entries);
    try {
      p.samples = run_trials(exp, n, exp.exec);
    } catch (const RetryCapExceeded& e) {
      r.aborted = true;
      r.abort_message = "n=" + std::to_string(n) + ": " + e.what();
      break;
    }
    const stats::MeanStd ms = stats::mean_std(p.samples);
    p.mean = ms.mean;
    p.std = ms.std;
    r.per_n.push_back(std::move(p));
  }
  if (r.per_n.size() >= 2) {
    const stats::LineFit f = fit_means(r.per_n);
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.r_squared = f.r_squared;
    r.slope_stderr = f.slope_stderr;
    r.slope_bootstrap_se = bootstrap_slope_se(r.per_n, exp.bootstrap, exp.seed);
  }
  return r;
}

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<double>& beta_q, const ScalingExperiment& tmpl) {
  std::vector<TradeoffPoint> out;
  for (double b : beta_q) {
    ScalingExperiment exp = tmpl;
    exp.c0 = C0Policy::power(b);
    exp.mode = PrepMode::parallel;
    out.push_back({b, run_scaling(exp)});
  }
  return out;
}

SupraComparison supra_comparison(const ScalingExperiment& tmpl) {
  ScalingExperiment exp = tmpl;
  exp.c0 = C0Policy::supra();
  exp.mode = PrepMode::parallel;
  SupraComparison c;
  c.means = run_scaling(exp);
  std::vector<double> n2, nl, y;
  for (const PerN& p : c.means.per_n) {
    n2.push_back(static_cast<double>(p.n) * p.n);
    nl.push_back(p.n * std::log(2.0));
    y.push_back(p.mean);
  }
  if (y.size() >= 3) {
    c.quadratic = stats::fit_line(n2, y);
    c.power_law = stats::fit_exponential(nl, y);
  }
  return c;
}

double c_bnd(unsigned n, unsigned i) {
  const double d = static_cast<double>(n) - static_cast<double>(i);
  return std::exp2(d) + std::exp2(0.75 * d);
}

namespace {

// log f(n, i); f = 1 - exp(-x) with x > 0.
double log_f(unsigned n, unsigned i) {
  const double prev = c_bnd(n, i - 1);
  const double gap = 0.5 - c_bnd(n, i) / prev;
  const double x = 2.0 * prev * gap * gap;
  return std::log(-std::expm1(-x));
}

}  // namespace

HoeffdingBound hoeffding_bound(unsigned n) {
  if (n < 2) throw ValidationError("hoeffding bound needs n >= 2");
  HoeffdingBound h;
  h.n = n;
  for (unsigned i = 0; i <= n; ++i) h.c_bnd.push_back(c_bnd(n, i));
  // Neumaier summation of 2^(n-i) log f(n, i).
  double sum = 0.0, comp = 0.0;
  for (unsigned i = 1; i + 1 <= n; ++i) {
    const double lf = log_f(n, i);
    h.per_level_f.push_back(std::exp(lf));
    const double term = std::ldexp(lf, static_cast<int>(n - i));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  h.log_product = sum + comp;
  h.product_lower_bound = std::exp(h.log_product);
  return h;
}

FinalNodeStats final_node_stats(unsigned n, std::int64_t passes, std::uint64_t seed, Execution exec) {
  if (n < 2) throw ValidationError("final node statistics need n >= 2");
  if (passes < 1) throw ValidationError("passes must be >= 1");
  FinalNodeStats st;
  st.n = n;
  st.c0 = C0Policy::supra().copies(std::size_t{1} << n);
  st.passes = passes;

  // above[k][m]: nodes of level m with c > c_bnd(n, m) in pass k
  std::vector<std::vector<std::int64_t>> above(static_cast<std::size_t>(passes), std::vector<std::int64_t>(n + 1, 0));
  std::vector<std::int64_t> root(static_cast<std::size_t>(passes), 0);
  for_trials(passes, exec, [&](std::int64_t k) {
    CascadeSpec spec;
    spec.mode = PrepMode::g_para;
    spec.n = n;
    spec.c0 = st.c0;
    spec.pplus = PPlusModel::half();
    auto& row = above[static_cast<std::size_t>(k)];
    spec.observer = [&row, n](const NodeEvent& e) {
      if (static_cast<double>(e.c) > c_bnd(n, e.level)) ++row[e.level];
    };
    root[static_cast<std::size_t>(k)] = run_gpara_pass(spec, derive_key(seed, {n, static_cast<std::uint64_t>(k)}));
  });

  std::vector<std::int64_t> level_total(n + 1, 0);
  for (std::int64_t k = 0; k < passes; ++k) {
    const std::int64_t c = root[static_cast<std::size_t>(k)];
    if (c > 0) ++st.nonzero;
    if (static_cast<double>(c) > c_bnd(n, n)) ++st.above_bound;
    for (unsigned m = 2; m <= n; ++m) level_total[m] += above[static_cast<std::size_t>(k)][m];
  }
  st.frequency = static_cast<double>(st.nonzero) / static_cast<double>(passes);
  st.sigma = stats::proportion_sigma(st.frequency, static_cast<std::size_t>(passes));

  // Leaves hold c0 = c_bnd(n, 0) > c_bnd(n, 1) copies.
  st.level_p.push_back(1.0);
  for (unsigned m = 2; m <= n; ++m) {
    const double nodes = std::ldexp(static_cast<double>(passes), static_cast<int>(n - m));
    st.level_p.push_back(static_cast<double>(level_total[m]) / nodes);
  }
  for (unsigned m = 2; m <= n; ++m) {
    const double prev = st.level_p[m - 2];
    st.level_chain.push_back(prev * prev * std::exp(log_f(n, m)));
  }
  return st;
}

std::vector<TradeoffDepth> tradeoff_depth_sweep(unsigned n, std::int64_t c0, std::int64_t trials, std::uint64_t seed) {
  std::vector<TradeoffDepth> out;
  for (unsigned nu = 1; nu <= n; ++nu) {
    TradeoffDepth d;
    d.n_u = nu;
    d.depth = depth_report(n, nu).total_depth;
    const std::int64_t leaves = std::int64_t{1} << (n - nu);
    d.qubits_per_copy = leaves * (nu + 1) + (leaves - 1);
    ScalingExperiment exp;
    exp.mode = PrepMode::tradeoff;
    exp.n_u = nu;
    exp.c0 = C0Policy::constant(c0);
    exp.trials = trials;
    exp.seed = seed;
    exp.pplus = PPlusModel::half();
    d.mean_t_stp = stats::mean_std(run_trials(exp, n, Execution::openmp)).mean;
    out.push_back(d);
  }
  return out;
}

Table1Report table1_report(const Table1Config& cfg) {
  Table1Report rep;
  rep.config = cfg;
  std::vector<std::int64_t> depth;
  for (unsigned n : cfg.depth_range) depth.push_back(depth_report(n, 1).total_depth);

  ScalingExperiment base;
  base.trials = cfg.trials;
  base.seed = cfg.seed;
  base.pplus = PPlusModel::half();

  {
    Table1Row row{"Sequential", "O(n^2)", "O(N^2)", "O(n)", depth, 0.0, "", {}, "peak block qubits"};
    ScalingExperiment exp = base;
    exp.mode = PrepMode::sequential;
    exp.n_range = cfg.seq_range;
    const FitReport f = run_scaling(exp);
    row.runtime_exponent = f.slope;
    row.runtime_fit = "log2 t vs log2 N slope";
    for (unsigned n : cfg.seq_range) row.qubits.push_back(2.0 * n + 1.0);
    // Measured with the exact engine on random positive data.
    for (unsigned n = 2; n <= 5; ++n) {
      PrepConfig pc;
      pc.seed = derive_key(cfg.seed, {0x7ab1eULL, n});
      const PrepResult r = f_seq(random_positive(std::size_t{1} << n, pc.seed), pc);
      rep.exact_seq_range.push_back(n);
      rep.exact_seq_peak.push_back(r.peak_block_qubits);
    }
    rep.rows.push_back(std::move(row));
  }
  {
    Table1Row row{"Parallel-1", "O(n^2)", "O(n^2)", "O(N^2)", depth, 0.0, "", {}, "leaf qubit slots c0 N"};
    ScalingExperiment exp = base;
    exp.n_range = cfg.para_range;
    const SupraComparison c = supra_comparison(exp);
    row.runtime_exponent = c.quadratic.r_squared;
    row.runtime_fit = c.quadratic_wins() ? "a n^2 + b (R^2), beats C N^beta" : "a n^2 + b (R^2), loses to C N^beta";
    for (unsigned n : cfg.para_range) row.qubits.push_back(static_cast<double>(C0Policy::supra().copies(std::size_t{1} << n) << n));
    rep.rows.push_back(std::move(row));
  }
  {
    Table1Row row{"Parallel-2", "O(n^2)", "O(N^1.52)", "O(N)", depth, 0.0, "", {}, "leaf qubit slots N"};
    ScalingExperiment exp = base;
    exp.n_range = cfg.para_range;
    exp.c0 = C0Policy::constant(1);
    row.runtime_exponent = run_scaling(exp).slope;
    row.runtime_fit = "log2 t vs log2 N slope";
    for (unsigned n : cfg.para_range) row.qubits.push_back(std::ldexp(1.0, static_cast<int>(n)));
    rep.rows.push_back(std::move(row));
  }
  {
    Table1Row row{"Unitary", "O(N)", "O(N)", "O(n)", {}, 0.0, "configured", {}, "n"};
    for (unsigned n : cfg.depth_range) row.depth.push_back(unitary_depth(n));
    row.runtime_exponent = 1.0;
    row.runtime_fit = "T_u = 2^n - 2, D_u = base + 2^n - 2 (configured)";
    for (unsigned n : cfg.para_range) row.qubits.push_back(n);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace qsprep
