// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsprep/label_encoding.hpp"
#include "qsprep/statevector.hpp"
#include "qsprep/types.hpp"

namespace qsprep {

enum class GateKind { u1q, cnot, cswap, ccswap, project };

struct Gate {
  GateKind kind = GateKind::u1q;
  // u1q: {q}; cnot: {control, target}; cswap: {control, a, b};
  // ccswap: {c1, c2, a, b}; project: {q}.
  std::array<unsigned, 4> q{};
  Mat2 matrix{};
  std::array<bool, 2> polarity{};
  Vec2 onto{};

  static Gate u1q(unsigned q, const Mat2& m);
  static Gate cnot(unsigned control, unsigned target);
  static Gate cswap(unsigned control, unsigned a, unsigned b);
  static Gate ccswap(unsigned c1, unsigned c2, bool p1, bool p2, unsigned a, unsigned b);
  static Gate project(unsigned q, const Vec2& onto);

  unsigned arity() const;
  std::span<const unsigned> support() const { return {q.data(), arity()}; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  explicit Circuit(unsigned num_qubits = 0);

  unsigned num_qubits() const { return num_qubits_; }
  const std::vector<std::vector<Gate>>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }
  std::size_t gate_count() const;
  std::size_t count(GateKind kind) const;
  unsigned max_arity() const;

  // ASAP placement: the earliest layer after the last use of any support qubit.
  void append(const Gate& g);
  // Whole layer at the end; supports must be disjoint.
  void append_layer(std::vector<Gate> layer);
  // Gates of `other` in layer order, qubit k mapped to map[k].
  void append_circuit(const Circuit& other, std::span<const unsigned> map);
  // Grow the register; returns the index of the first new qubit.
  unsigned add_qubits(unsigned count);

  // Same width and the same gates in the same layers.
  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits_ == b.num_qubits_ && a.layers_ == b.layers_;
  }

 private:
  void check_gate(const Gate& g) const;

  unsigned num_qubits_ = 0;
  std::vector<std::vector<Gate>> layers_;
  std::vector<std::size_t> frontier_;
};

// Layer counts of the fixed decomposition table, after ASAP layering.
struct DecompositionConstants {
  std::size_t cswap_depth = 0;
  std::size_t cswap_cnots = 0;
  std::size_t ccswap_depth = 0;
  std::size_t ccswap_cnots = 0;
};

const DecompositionConstants& decomposition_constants();

// Only u1q, cnot and project remain.
Circuit decompose(const Circuit& c);

// controlled-u as C, CX, B, CX, A on the target and a phase on the control.
void append_controlled_u(Circuit& c, unsigned control, unsigned target, const Mat2& u);
void append_toffoli(Circuit& c, unsigned c1, unsigned c2, unsigned target);

// Euler angles with u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};
ZyzAngles zyz_decompose(const Mat2& u);
Mat2 zyz_compose(const ZyzAngles& a);

// Control 0, block a on 1..n+1, block b on n+2..2n+2.
Circuit build_concat_circuit(unsigned n);
// Ancillas 0, 1, then blocks a, b, c, d of n+1 qubits each.
Circuit build_complex_circuit(unsigned n);
// Two-qubit base case from amplitude assignment, as u1q and cnot gates.
Circuit build_base_circuit(const ResizedVector& v);

struct Network {
  Circuit circuit;
  std::vector<unsigned> output_register;  // label qubits of the final state, MSB first
  std::vector<unsigned> data_qubits;      // leaf registers of the first copy
  unsigned copies = 1;
};

// Divide-and-conquer tree of concat blocks on disjoint registers, one success
// path, `copies` parallel copies per node. Ends with the value projection.
Network build_full_network(const ResizedVector& v, unsigned copies = 1, bool decomposed = false);

std::size_t concat_block_depth(unsigned n, bool decomposed);
std::size_t base_case_depth();

struct SimulationResult {
  PureState state{1};
  double probability = 1.0;  // product of post-selection probabilities
};

SimulationResult simulate(const Circuit& c, PureState initial);
SimulationResult simulate(const Circuit& c);

// Text format, see docs/circuit_format.md.
std::string emit(const Circuit& c);
Circuit parse_circuit(std::string_view text);

}  // namespace qsprep
