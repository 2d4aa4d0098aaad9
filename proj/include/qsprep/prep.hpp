// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsprep/label_encoding.hpp"
#include "qsprep/statevector.hpp"

namespace qsprep {

enum class PrepMode { sequential, parallel, g_para, tradeoff };
enum class Engine { exact_statevector, classical_cascade };

std::string to_string(PrepMode m);
std::string to_string(Engine e);
PrepMode parse_mode(std::string_view s);      // seq | para | gpara | tradeoff
Engine parse_engine(std::string_view s);      // exact | cascade

// Leaf copies c0 as a function of the vector length N.
struct C0Policy {
  enum class Kind { constant, power, supra };
  Kind kind = Kind::constant;
  double value = 1.0;  // k for constant, beta_q for power

  static C0Policy constant(std::int64_t k);
  static C0Policy power(double beta_q);  // ceil(N^(beta_q - 1))
  static C0Policy supra();               // ceil(N + N^(3/4))
  // "const:<k>", "power:<beta_q>", "supra"
  static C0Policy parse(std::string_view s);

  std::int64_t copies(std::size_t n_entries) const;
  std::string to_string() const;
};

// Where the concatenation success probability comes from (cascade engine).
struct PPlusModel {
  enum class Kind { worst_case_half, analytic_from_vector, fixed };
  Kind kind = Kind::analytic_from_vector;
  double p = 0.5;

  static PPlusModel half() { return {Kind::worst_case_half, 0.5}; }
  static PPlusModel analytic() { return {Kind::analytic_from_vector, 0.5}; }
  static PPlusModel fixed(double p);
  // "half", "analytic", "fixed:<p>"
  static PPlusModel parse(std::string_view s);
  std::string to_string() const;
};

// Leaf charges of the dense base case for a 2^m-entry leaf. Both vanish
// beyond the constant two-entry case at m = 1.
std::int64_t unitary_runtime(unsigned m);  // 2^m - 2
std::int64_t unitary_depth(unsigned m);    // base circuit depth + 2^m - 2

struct PrepConfig {
  PrepMode mode = PrepMode::sequential;
  C0Policy c0;
  unsigned n_u = 1;
  Engine engine = Engine::exact_statevector;
  std::uint64_t seed = 0;
  PPlusModel pplus;  // cascade engine only
  std::int64_t retry_cap = 1'000'000'000;
};

struct DepthReport {
  std::int64_t leaf_depth = 0;
  std::vector<std::int64_t> block_depths;  // decomposed, per level bottom-up
  std::int64_t total_depth = 0;
};

struct PrepResult {
  std::optional<LabelState> state;       // exact engine
  std::optional<ResizedVector> decoded;  // exact engine
  std::int64_t t_stp = 0;
  std::int64_t restarts = 0;
  std::int64_t final_copies = 0;
  std::int64_t peak_parallel_copies = 0;
  std::int64_t total_qubit_touches = 0;
  std::int64_t charged_work = 0;
  std::int64_t concat_attempts = 0;
  unsigned peak_block_qubits = 0;
  unsigned peak_live_qubits = 0;
  double min_factor_purity = 1.0;
  DepthReport depth;
};

// One concatenation batch: `cmin` pairs at a node, `c` of them succeeded.
struct NodeEvent {
  unsigned level = 0;  // log2 of the node's output length
  std::uint64_t index = 0;
  std::int64_t cmin = 0;
  std::int64_t c = 0;
  double p = 0.0;
};

// Classical cascade over a tree of 2^n entries with 2^n_leaf-entry leaves.
struct CascadeSpec {
  PrepMode mode = PrepMode::parallel;
  unsigned n = 1;
  unsigned n_leaf = 1;
  std::int64_t c0 = 1;
  PPlusModel pplus = PPlusModel::half();
  // Label norms A of the leaves, required for analytic_from_vector.
  std::vector<double> leaf_norms;
  std::int64_t retry_cap = 1'000'000'000;
  std::function<void(const NodeEvent&)> observer;
};

PrepResult run_cascade(const CascadeSpec& spec, std::uint64_t key);
// One g-hat pass without retries; returns the root copy count c'(n).
std::int64_t run_gpara_pass(const CascadeSpec& spec, std::uint64_t key);

// Drivers. The stream root is cfg.seed; c0 and n_u arguments override cfg.
PrepResult f_seq(const ResizedVector& v, const PrepConfig& cfg);
PrepResult f_para(const ResizedVector& v, std::int64_t c0, const PrepConfig& cfg);
PrepResult g_para(const ResizedVector& v, std::int64_t c0, const PrepConfig& cfg);
PrepResult f_tradeoff(const ResizedVector& v, std::int64_t c0, unsigned n_u, const PrepConfig& cfg);
// Dispatch on cfg.mode with c0 from cfg.c0.
PrepResult prepare_label(const ResizedVector& v, const PrepConfig& cfg);

// Observer hook for exact-engine runs (binomial tests).
PrepResult prepare_label_observed(const ResizedVector& v, const PrepConfig& cfg,
                                  const std::function<void(const NodeEvent&)>& observer);

struct AmplitudePrepResult {
  std::optional<PureState> state;  // exact engine: |psi(v)>
  ResizedVector resized;
  bool complex_path = false;
  double final_prob = 0.0;  // p_s or p_s'
  std::int64_t t_stp = 0;
  std::int64_t final_attempts = 0;
  std::int64_t restarts = 0;
  double fidelity = 0.0;  // to target_state(u), exact engine
  // Label preparations of the successful attempt; exact-engine states are
  // those of the first attempt, which later attempts would reproduce.
  std::vector<PrepResult> parts;
};

// Amplitude encoding: positive path (one label state, value projection) or
// the four-vector path. Failed final projections restart the preparation.
AmplitudePrepResult prepare_amplitude(const AmplitudeVector& u, const PrepConfig& cfg);

DepthReport depth_report(unsigned n, unsigned n_leaf);

}  // namespace qsprep
