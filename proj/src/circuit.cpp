// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsprep/error.hpp"

namespace qsprep {

Gate Gate::u1q(unsigned q, const Mat2& m) {
  Gate g;
  g.kind = GateKind::u1q;
  g.q[0] = q;
  g.matrix = m;
  return g;
}

Gate Gate::cnot(unsigned control, unsigned target) {
  Gate g;
  g.kind = GateKind::cnot;
  g.q = {control, target, 0, 0};
  return g;
}

Gate Gate::cswap(unsigned control, unsigned a, unsigned b) {
  Gate g;
  g.kind = GateKind::cswap;
  g.q = {control, a, b, 0};
  return g;
}

Gate Gate::ccswap(unsigned c1, unsigned c2, bool p1, bool p2, unsigned a, unsigned b) {
  Gate g;
  g.kind = GateKind::ccswap;
  g.q = {c1, c2, a, b};
  g.polarity = {p1, p2};
  return g;
}

Gate Gate::project(unsigned q, const Vec2& onto) {
  Gate g;
  g.kind = GateKind::project;
  g.q[0] = q;
  g.onto = onto;
  return g;
}

unsigned Gate::arity() const {
  switch (kind) {
    case GateKind::u1q:
    case GateKind::project:
      return 1;
    case GateKind::cnot:
      return 2;
    case GateKind::cswap:
      return 3;
    case GateKind::ccswap:
      return 4;
  }
  return 0;
}

Circuit::Circuit(unsigned num_qubits) : num_qubits_(num_qubits), frontier_(num_qubits, 0) {}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.size();
  return n;
}

std::size_t Circuit::count(GateKind kind) const {
  std::size_t n = 0;
  for (const auto& layer : layers_)
    for (const Gate& g : layer) n += g.kind == kind;
  return n;
}

unsigned Circuit::max_arity() const {
  unsigned k = 0;
  for (const auto& layer : layers_)
    for (const Gate& g : layer) k = std::max(k, g.arity());
  return k;
}

void Circuit::check_gate(const Gate& g) const {
  const auto s = g.support();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= num_qubits_) throw ValidationError("gate qubit out of range");
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j]) throw ValidationError("gate with duplicate qubits");
  }
  if (g.kind == GateKind::u1q && !gates::is_unitary(g.matrix)) throw ValidationError("non-unitary gate");
  if (g.kind == GateKind::project &&
      std::abs(std::norm(g.onto[0]) + std::norm(g.onto[1]) - 1.0) > 1e-12)
    throw ValidationError("projection target is not normalized");
}

void Circuit::append(const Gate& g) {
  check_gate(g);
  std::size_t at = 0;
  for (unsigned q : g.support()) at = std::max(at, frontier_[q]);
  if (at == layers_.size()) layers_.emplace_back();
  layers_[at].push_back(g);
  for (unsigned q : g.support()) frontier_[q] = at + 1;
}

void Circuit::append_layer(std::vector<Gate> layer) {
  std::vector<bool> used(num_qubits_, false);
  for (const Gate& g : layer) {
    check_gate(g);
    for (unsigned q : g.support()) {
      if (used[q]) throw ValidationError("overlapping gate supports within a layer");
      used[q] = true;
    }
  }
  const std::size_t at = layers_.size();
  for (unsigned q = 0; q < num_qubits_; ++q)
    if (used[q]) frontier_[q] = at + 1;
  layers_.push_back(std::move(layer));
}

void Circuit::append_circuit(const Circuit& other, std::span<const unsigned> map) {
  if (map.size() != other.num_qubits()) throw ValidationError("qubit map size mismatch");
  for (const auto& layer : other.layers())
    for (Gate g : layer) {
      for (unsigned k = 0; k < g.arity(); ++k) g.q[k] = map[g.q[k]];
      append(g);
    }
}

unsigned Circuit::add_qubits(unsigned count) {
  const unsigned first = num_qubits_;
  num_qubits_ += count;
  frontier_.resize(num_qubits_, 0);
  return first;
}

ZyzAngles zyz_decompose(const Mat2& u) {
  ZyzAngles a;
  a.alpha = std::arg(gates::determinant(u)) / 2.0;
  const cplx ph = std::polar(1.0, -a.alpha);
  const cplx v00 = ph * u[0], v10 = ph * u[2], v11 = ph * u[3];
  a.gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  const double eps = 1e-14;
  if (std::abs(v10) < eps) {
    a.beta = a.delta = std::arg(v11);
  } else if (std::abs(v00) < eps) {
    a.beta = std::arg(v10);
    a.delta = -a.beta;
  } else {
    const double sum = 2.0 * std::arg(v11), diff = 2.0 * std::arg(v10);
    a.beta = (sum + diff) / 2.0;
    a.delta = (sum - diff) / 2.0;
  }
  return a;
}

Mat2 zyz_compose(const ZyzAngles& a) {
  Mat2 m = gates::multiply(gates::rz(a.beta), gates::multiply(gates::ry(a.gamma), gates::rz(a.delta)));
  for (cplx& e : m) e *= std::polar(1.0, a.alpha);
  return m;
}

namespace {

bool is_identity(const Mat2& m) { return gates::max_abs_diff(m, gates::identity()) < 1e-14; }

void add_u(Circuit& c, unsigned q, const Mat2& m) {
  if (!is_identity(m)) c.append(Gate::u1q(q, m));
}

Mat2 tdg() { return gates::adjoint(gates::t()); }

// C^2(U) from controlled square roots.
void append_cc_u(Circuit& c, unsigned c1, unsigned c2, unsigned t, const Mat2& u) {
  const Mat2 w = gates::sqrt_unitary(u);
  append_controlled_u(c, c2, t, w);
  c.append(Gate::cnot(c1, c2));
  append_controlled_u(c, c2, t, gates::adjoint(w));
  c.append(Gate::cnot(c1, c2));
  append_controlled_u(c, c1, t, w);
}

// C^3(X) with V = sqrt(X).
void append_c3x(Circuit& c, unsigned c1, unsigned c2, unsigned c3, unsigned t) {
  const Mat2 v = gates::sqrt_unitary(gates::x());
  append_controlled_u(c, c3, t, v);
  append_toffoli(c, c1, c2, c3);
  append_controlled_u(c, c3, t, gates::adjoint(v));
  append_toffoli(c, c1, c2, c3);
  append_cc_u(c, c1, c2, t, v);
}

void append_decomposed(Circuit& c, const Gate& g) {
  switch (g.kind) {
    case GateKind::u1q:
    case GateKind::cnot:
    case GateKind::project:
      c.append(g);
      return;
    case GateKind::cswap: {
      const unsigned ctl = g.q[0], a = g.q[1], b = g.q[2];
      c.append(Gate::cnot(b, a));
      append_toffoli(c, ctl, a, b);
      c.append(Gate::cnot(b, a));
      return;
    }
    case GateKind::ccswap: {
      const unsigned c1 = g.q[0], c2 = g.q[1], a = g.q[2], b = g.q[3];
      if (!g.polarity[0]) c.append(Gate::u1q(c1, gates::x()));
      if (!g.polarity[1]) c.append(Gate::u1q(c2, gates::x()));
      c.append(Gate::cnot(b, a));
      append_c3x(c, c1, c2, a, b);
      c.append(Gate::cnot(b, a));
      if (!g.polarity[0]) c.append(Gate::u1q(c1, gates::x()));
      if (!g.polarity[1]) c.append(Gate::u1q(c2, gates::x()));
      return;
    }
  }
}

}  // namespace

void append_controlled_u(Circuit& c, unsigned control, unsigned target, const Mat2& u) {
  const ZyzAngles z = zyz_decompose(u);
  const Mat2 a = gates::multiply(gates::rz(z.beta), gates::ry(z.gamma / 2));
  const Mat2 b = gates::multiply(gates::ry(-z.gamma / 2), gates::rz(-(z.delta + z.beta) / 2));
  const Mat2 cc = gates::rz((z.delta - z.beta) / 2);
  add_u(c, target, cc);
  c.append(Gate::cnot(control, target));
  add_u(c, target, b);
  c.append(Gate::cnot(control, target));
  add_u(c, target, a);
  add_u(c, control, gates::phase(z.alpha));
}

void append_toffoli(Circuit& c, unsigned c1, unsigned c2, unsigned t) {
  c.append(Gate::u1q(t, gates::h()));
  c.append(Gate::cnot(c2, t));
  c.append(Gate::u1q(t, tdg()));
  c.append(Gate::cnot(c1, t));
  c.append(Gate::u1q(t, gates::t()));
  c.append(Gate::cnot(c2, t));
  c.append(Gate::u1q(t, tdg()));
  c.append(Gate::cnot(c1, t));
  c.append(Gate::u1q(c2, gates::t()));
  c.append(Gate::u1q(t, gates::t()));
  c.append(Gate::u1q(t, gates::h()));
  c.append(Gate::cnot(c1, c2));
  c.append(Gate::u1q(c1, gates::t()));
  c.append(Gate::u1q(c2, tdg()));
  c.append(Gate::cnot(c1, c2));
}

Circuit decompose(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (const auto& layer : c.layers())
    for (const Gate& g : layer) append_decomposed(out, g);
  return out;
}

const DecompositionConstants& decomposition_constants() {
  static const DecompositionConstants k = [] {
    DecompositionConstants d;
    Circuit s(3);
    s.append(Gate::cswap(0, 1, 2));
    const Circuit ds = decompose(s);
    d.cswap_depth = ds.depth();
    d.cswap_cnots = ds.count(GateKind::cnot);
    Circuit cc(4);
    cc.append(Gate::ccswap(0, 1, true, true, 2, 3));
    const Circuit dcc = decompose(cc);
    d.ccswap_depth = dcc.depth();
    d.ccswap_cnots = dcc.count(GateKind::cnot);
    return d;
  }();
  return k;
}

Circuit build_concat_circuit(unsigned n) {
  if (n < 1) throw ValidationError("concat circuit needs n >= 1");
  Circuit c(2 * n + 3);
  c.append(Gate::u1q(0, gates::h()));
  for (unsigned k = 0; k <= n; ++k) c.append(Gate::cswap(0, 1 + k, n + 2 + k));
  c.append(Gate::project(2 * n + 2, kets::plus()));
  return c;
}

Circuit build_complex_circuit(unsigned n) {
  if (n < 1) throw ValidationError("complex circuit needs n >= 1");
  const unsigned w = n + 1;
  Circuit c(4 * w + 2);
  auto block = [&](unsigned k) { return 2 + k * w; };
  c.append(Gate::u1q(0, gates::multiply(gates::s(), gates::h())));
  c.append(Gate::u1q(1, gates::multiply(gates::h(), gates::x())));
  const bool pol[3][2] = {{false, true}, {true, false}, {true, true}};
  for (unsigned g = 0; g < 3; ++g)
    for (unsigned k = 0; k < w; ++k)
      c.append(Gate::ccswap(0, 1, pol[g][0], pol[g][1], block(0) + k, block(g + 1) + k));
  for (unsigned g = 1; g <= 3; ++g) c.append(Gate::project(block(g) + n, kets::plus()));
  c.append(Gate::project(0, kets::plus()));
  c.append(Gate::project(1, kets::plus()));
  return c;
}

Circuit build_base_circuit(const ResizedVector& v) {
  const LabelState ls = build_base(v);
  const TwoQubitFactorization f = factorize_two_qubit(ls.state);
  Circuit c(2);
  c.append(Gate::u1q(0, f.first));
  c.append(Gate::u1q(1, f.if_zero));
  append_controlled_u(c, 0, 1, gates::multiply(f.if_one, gates::adjoint(f.if_zero)));
  return c;
}

namespace {

struct Register {
  std::vector<unsigned> qubits;  // label qubits then the value qubit
};

}  // namespace

Network build_full_network(const ResizedVector& v, unsigned copies, bool decomposed) {
  if (copies < 1) throw ValidationError("network needs at least one copy");
  const unsigned n = v.num_qubits();
  Network net;
  net.copies = copies;
  Circuit& c = net.circuit;

  // level[i][j]: register of node i, copy j, at the current level
  std::vector<std::vector<Register>> level(v.size() / 2, std::vector<Register>(copies));
  for (std::size_t leaf = 0; leaf < v.size() / 2; ++leaf) {
    const Circuit base = build_base_circuit(v.slice(2 * leaf, 2));
    for (unsigned j = 0; j < copies; ++j) {
      const unsigned q0 = c.add_qubits(2);
      const unsigned map[2] = {q0, q0 + 1};
      c.append_circuit(base, map);
      level[leaf][j].qubits = {q0, q0 + 1};
      if (j == 0) {
        net.data_qubits.push_back(q0);
        net.data_qubits.push_back(q0 + 1);
      }
    }
  }

  for (unsigned m = 2; m <= n; ++m) {
    std::vector<std::vector<Register>> next(level.size() / 2, std::vector<Register>(copies));
    for (std::size_t i = 0; i < next.size(); ++i)
      for (unsigned j = 0; j < copies; ++j) {
        const Register& a = level[2 * i][j];
        const Register& b = level[2 * i + 1][j];
        const unsigned ctl = c.add_qubits(1);
        Circuit block = build_concat_circuit(m - 1);
        if (decomposed) block = decompose(block);
        std::vector<unsigned> map{ctl};
        map.insert(map.end(), a.qubits.begin(), a.qubits.end());
        map.insert(map.end(), b.qubits.begin(), b.qubits.end());
        c.append_circuit(block, map);
        Register& out = next[i][j];
        out.qubits = {ctl};
        out.qubits.insert(out.qubits.end(), a.qubits.begin(), a.qubits.end());
      }
    level = std::move(next);
  }

  for (unsigned j = 0; j < copies; ++j)
    c.append(Gate::project(level[0][j].qubits.back(), kets::zero()));
  const auto& root = level[0][0].qubits;
  net.output_register.assign(root.begin(), root.end() - 1);
  return net;
}

std::size_t concat_block_depth(unsigned n, bool decomposed) {
  const Circuit c = build_concat_circuit(n);
  return decomposed ? decompose(c).depth() : c.depth();
}

std::size_t base_case_depth() {
  static const std::size_t d = build_base_circuit(ResizedVector::real({0.3, 0.6})).depth();
  return d;
}

SimulationResult simulate(const Circuit& c, PureState state) {
  if (state.num_qubits() != c.num_qubits()) throw ValidationError("initial state width mismatch");
  SimulationResult r{std::move(state), 1.0};
  for (const auto& layer : c.layers())
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::u1q:
          r.state.apply_1q(Qubit{g.q[0]}, g.matrix);
          break;
        case GateKind::cnot:
          r.state.apply_cnot(Qubit{g.q[0]}, Qubit{g.q[1]});
          break;
        case GateKind::cswap:
          r.state.apply_cswap(Qubit{g.q[0]}, Qubit{g.q[1]}, Qubit{g.q[2]});
          break;
        case GateKind::ccswap:
          r.state.apply_ccswap(Qubit{g.q[0]}, Qubit{g.q[1]}, g.polarity[0], g.polarity[1],
                               Qubit{g.q[2]}, Qubit{g.q[3]});
          break;
        case GateKind::project: {
          Projection p = r.state.project(Qubit{g.q[0]}, g.onto);
          if (!p.post) throw ValidationError("impossible outcome");
          r.probability *= p.probability;
          r.state = std::move(*p.post);
          break;
        }
      }
    }
  return r;
}

SimulationResult simulate(const Circuit& c) { return simulate(c, PureState(c.num_qubits())); }

}  // namespace qsprep
