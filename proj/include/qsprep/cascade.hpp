// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsprep/prep.hpp"
#include "qsprep/stats.hpp"

namespace qsprep {

enum class Execution { serial, openmp };

struct ScalingExperiment {
  std::vector<unsigned> n_range{4, 5, 6, 7, 8, 9, 10};
  std::int64_t trials = 1000;
  C0Policy c0;
  PPlusModel pplus = PPlusModel::half();
  PrepMode mode = PrepMode::parallel;
  unsigned n_u = 1;
  std::uint64_t seed = 1;
  std::int64_t retry_cap = 1'000'000'000;
  unsigned bootstrap = 200;  // resamples for the slope error; 0 disables
  Execution exec = Execution::openmp;
};

struct PerN {
  unsigned n = 0;
  std::size_t entries = 0;
  std::int64_t c0 = 0;
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> samples;  // t_stp per trial, trial order
};

struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  double slope_bootstrap_se = 0.0;
  std::vector<PerN> per_n;
  bool aborted = false;
  std::string abort_message;
};

// t_stp of `trials` independent runs at one size. Trial k uses the stream
// derive_key(seed, {n, k}); the result does not depend on `exec`.
std::vector<double> run_trials(const ScalingExperiment& exp, unsigned n, Execution exec);

// Mean t_stp per n and the least-squares fit of log2 mean against log2 N.
// A retry-cap abort stops at the failing n and returns the partial report.
FitReport run_scaling(const ScalingExperiment& exp);

struct TradeoffPoint {
  double beta_q = 1.0;
  FitReport fit;
};

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<double>& beta_q, const ScalingExperiment& tmpl);

// Mean t_stp against a n^2 + b, and against the best C N^beta, in linear space.
struct SupraComparison {
  FitReport means;
  stats::LineFit quadratic;  // x = n^2
  stats::ExpFit power_law;   // x = n ln 2
  bool quadratic_wins() const { return quadratic.sse < power_law.sse; }
};

SupraComparison supra_comparison(const ScalingExperiment& exp);

struct HoeffdingBound {
  unsigned n = 0;
  std::vector<double> c_bnd;        // c_bnd(n, i), i = 0..n
  std::vector<double> per_level_f;  // f(n, i), i = 1..n-1
  double log_product = 0.0;         // log of prod f(n,i)^(2^(n-i))
  double product_lower_bound = 0.0;
};

double c_bnd(unsigned n, unsigned i);
HoeffdingBound hoeffding_bound(unsigned n);

// Statistics of single g-hat passes with the supra policy at p+ = 1/2.
struct FinalNodeStats {
  unsigned n = 0;
  std::int64_t c0 = 0;
  std::int64_t passes = 0;
  std::int64_t nonzero = 0;         // c'(n) > 0
  std::int64_t above_bound = 0;     // c'(n) > c_bnd(n, n)
  double frequency = 0.0;           // nonzero / passes
  double sigma = 0.0;               // binomial radius at `frequency`
  std::vector<double> level_p;      // empirical P_{n,i}, i = 1..n
  std::vector<double> level_chain;  // P_{n,i-1}^2 f(n,i), i = 2..n
};

FinalNodeStats final_node_stats(unsigned n, std::int64_t passes, std::uint64_t seed,
                                Execution exec = Execution::openmp);

// Depth of the trade-off network: unitary leaves of 2^n_u entries plus the
// decomposed concatenation blocks above them.
struct TradeoffDepth {
  unsigned n_u = 1;
  std::int64_t depth = 0;
  std::int64_t qubits_per_copy = 0;
  double mean_t_stp = 0.0;
};

std::vector<TradeoffDepth> tradeoff_depth_sweep(unsigned n, std::int64_t c0, std::int64_t trials,
                                                std::uint64_t seed);

struct Table1Row {
  std::string method;
  std::string claimed_depth, claimed_runtime, claimed_qubits;
  std::vector<std::int64_t> depth;  // per n of the depth range
  double runtime_exponent = 0.0;    // fitted slope, or a n^2 R^2 for the supra row
  std::string runtime_fit;
  std::vector<double> qubits;  // per n of the runtime range
  std::string qubit_measure;
};

struct Table1Config {
  std::vector<unsigned> depth_range{2, 3, 4, 5, 6};
  std::vector<unsigned> seq_range{3, 4, 5, 6, 7, 8};
  std::vector<unsigned> para_range{4, 5, 6, 7, 8, 9, 10};
  std::int64_t trials = 200;
  std::uint64_t seed = 1;
};

struct Table1Report {
  Table1Config config;
  std::vector<Table1Row> rows;
  std::vector<unsigned> exact_seq_range;      // sizes of the exact-engine runs
  std::vector<unsigned> exact_seq_peak;       // measured peak block qubits
};

Table1Report table1_report(const Table1Config& cfg = {});

}  // namespace qsprep
