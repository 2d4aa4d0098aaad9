// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>

#include "qsprep/label_encoding.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/statevector.hpp"

namespace qsprep {

// N (A_a + A_b) / (4 A_a A_b) for two N-entry inputs.
double compute_p_plus(double a_norm_sq, double b_norm_sq, std::size_t n_entries);

struct ConcatOutcome {
  double success_prob = 0.0;    // analytic
  double simulated_prob = 0.0;  // from the statevector projection
  LabelState post_state_on_success;
  // Trailing n+1 qubits after success; equals |+>^(n+1).
  PureState disentangled_factor{1};
  double factor_purity = 0.0;
  unsigned block_qubits = 0;
};

struct ConcatResult {
  ConcatOutcome attempted;
  bool sampled_success = false;
  // Full register after the sampled projection outcome.
  PureState state{1};
};

// Register layout: control 0, block a on 1..n+1, block b on n+2..2n+2.
ConcatOutcome concatenate_outcome(const LabelState& a, const LabelState& b);
ConcatResult concatenate(const LabelState& a, const LabelState& b, RngStream& rng);

struct ValueProjection {
  double p_s = 0.0;
  double simulated_prob = 0.0;
  std::optional<PureState> state;  // sum_i v_i |n,i>, normalized
};

ValueProjection project_value_qubit(const LabelState& ls);
double value_success_prob(const ResizedVector& v);

struct ComplexDecomposition {
  ResizedVector va, vb, vc, vd;
  ResizedVector reconstruct() const;
};

ComplexDecomposition decompose_complex(const ResizedVector& v);
// N^3 sum|v|^2 / (64 A_a A_b A_c A_d)
double complex_success_prob(const ComplexDecomposition& d);

struct ComplexAssembly {
  double p_s_prime = 0.0;
  double simulated_prob = 0.0;
  double psi0_norm_sq = 0.0;  // <Psi'0|Psi'0>
  double psi1_norm_sq = 0.0;  // tracked norm after the projections
  unsigned register_qubits = 0;
  std::optional<PureState> state;  // |psi(v)> on n qubits
};

struct ComplexResult {
  ComplexAssembly attempted;
  bool sampled_success = false;
};

// Ancillas 0 and 1, then blocks a, b, c, d of n+1 qubits each.
ComplexAssembly assemble_complex_outcome(const ComplexDecomposition& d,
                                         const std::array<LabelState, 4>& states);
ComplexResult assemble_complex(const ComplexDecomposition& d,
                               const std::array<LabelState, 4>& states, RngStream& rng);

}  // namespace qsprep
