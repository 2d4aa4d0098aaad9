// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qsprep/types.hpp"

namespace qsprep {

struct Projection;
struct Factorization;

// Dense statevector. Amplitudes are kept normalized; norm_sq carries the
// squared norm of the unnormalized ket the state stands for.
class PureState {
 public:
  static constexpr unsigned kMaxQubits = 24;

  explicit PureState(unsigned num_qubits);
  // Normalizes `amps`; norm_sq becomes their squared norm times `scale`.
  static PureState from_amplitudes(std::vector<cplx> amps, double scale = 1.0);
  static PureState from_ket(const Vec2& ket);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx amplitude(std::size_t index) const { return amps_[index]; }
  double norm_sq() const { return norm_sq_; }
  void set_norm_sq(double value);

  void apply_1q(Qubit q, const Mat2& u);
  void apply_cnot(Qubit control, Qubit target);
  void apply_cswap(Qubit control, Qubit a, Qubit b);
  void apply_ccswap(Qubit c1, Qubit c2, bool c1_polarity, bool c2_polarity, Qubit a, Qubit b);

  double probability(Qubit q, const Vec2& onto) const;
  // Projects q onto `onto` and renormalizes; q stays in the register.
  Projection project(Qubit q, const Vec2& onto) const;
  // Same, but q is removed from the register afterwards.
  Projection project_out(Qubit q, const Vec2& onto) const;

  Factorization factor_check(std::span<const Qubit> subset) const;

  // Global phase fixed so the first nonzero amplitude is real positive.
  PureState canonical() const;

  friend PureState tensor(const PureState& a, const PureState& b);

 private:
  PureState(unsigned num_qubits, std::vector<cplx> amps, double norm_sq);
  unsigned pos(Qubit q) const;
  void check_qubit(Qubit q) const;

  unsigned num_qubits_;
  std::vector<cplx> amps_;
  double norm_sq_ = 1.0;
};

struct Projection {
  double probability = 0.0;
  // Empty when the outcome has probability zero.
  std::optional<PureState> post;
};

struct Factorization {
  bool is_product = false;
  double purity = 0.0;
  // Phase-canonical factor on the subset, in subset order.
  std::optional<PureState> factor;
};

PureState tensor(const PureState& a, const PureState& b);
// |<a|b>|^2 on the normalized arrays.
double fidelity(const PureState& a, const PureState& b);
double max_abs_diff(const PureState& a, const PureState& b);

}  // namespace qsprep
