// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/concat.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qsprep/error.hpp"

namespace qsprep {

namespace {

std::vector<Qubit> qubit_range(unsigned first, unsigned count) {
  std::vector<Qubit> qs(count);
  for (unsigned k = 0; k < count; ++k) qs[k] = Qubit{first + k};
  return qs;
}

PureState uniform_plus(unsigned qubits) {
  return PureState::from_amplitudes(std::vector<cplx>(std::size_t{1} << qubits, 1.0));
}

void check_label(const LabelState& ls) {
  if (ls.state.num_qubits() != ls.n + 1 || !(ls.norm_sq > 0.0))
    throw ValidationError("malformed label state");
}

}  // namespace

double compute_p_plus(double a_norm_sq, double b_norm_sq, std::size_t n_entries) {
  if (!(a_norm_sq > 0.0) || !(b_norm_sq > 0.0)) throw ValidationError("norms must be positive");
  return static_cast<double>(n_entries) * (a_norm_sq + b_norm_sq) / (4.0 * a_norm_sq * b_norm_sq);
}

ConcatOutcome concatenate_outcome(const LabelState& a, const LabelState& b) {
  check_label(a);
  check_label(b);
  if (a.n != b.n) throw ValidationError("concatenation inputs differ in dimension");
  const unsigned n = a.n;
  PureState joint = tensor(tensor(PureState::from_ket(kets::plus()), a.state), b.state);
  for (unsigned k = 0; k <= n; ++k) joint.apply_cswap(Qubit{0}, Qubit{1 + k}, Qubit{n + 2 + k});

  ConcatOutcome out;
  out.block_qubits = joint.num_qubits();
  out.success_prob = compute_p_plus(a.norm_sq, b.norm_sq, a.dim());
  Projection proj = joint.project(Qubit{2 * n + 2}, kets::plus());
  out.simulated_prob = proj.probability;
  if (std::abs(out.simulated_prob - out.success_prob) > 1e-10)
    throw std::logic_error("concatenation probability disagrees with the analytic p_plus");

  const PureState& post = *proj.post;
  const auto tail = qubit_range(n + 2, n + 1);
  Factorization rest = post.factor_check(tail);
  if (!rest.is_product) throw std::logic_error("trailing block is entangled after concatenation");
  if (max_abs_diff(*rest.factor, uniform_plus(n + 1)) > 1e-10)
    throw std::logic_error("trailing block is not the uniform label state");
  out.factor_purity = rest.purity;
  out.disentangled_factor = *rest.factor;

  const auto head = qubit_range(0, n + 2);
  Factorization label = post.factor_check(head);
  PureState merged = *label.factor;
  const double nsq = a.norm_sq + b.norm_sq;
  merged.set_norm_sq(nsq);
  out.post_state_on_success = LabelState{n + 1, std::move(merged), nsq};
  return out;
}

ConcatResult concatenate(const LabelState& a, const LabelState& b, RngStream& rng) {
  ConcatResult r{concatenate_outcome(a, b), false, PureState{1}};
  r.sampled_success = sample_successes(rng, 1, r.attempted.simulated_prob) == 1;
  const unsigned n = a.n;
  PureState joint = tensor(tensor(PureState::from_ket(kets::plus()), a.state), b.state);
  for (unsigned k = 0; k <= n; ++k) joint.apply_cswap(Qubit{0}, Qubit{1 + k}, Qubit{n + 2 + k});
  Projection proj = joint.project(Qubit{2 * n + 2}, r.sampled_success ? kets::plus() : kets::minus());
  if (!proj.post) throw ValidationError("impossible outcome");
  r.state = std::move(*proj.post);
  return r;
}

double value_success_prob(const ResizedVector& v) {
  const double s = v.sum_sq();
  if (!(s > 0.0)) throw ValidationError("zero success probability");
  return s / v.label_norm_sq();
}

ValueProjection project_value_qubit(const LabelState& ls) {
  ValueProjection out;
  out.p_s = value_success_prob(decode(ls));
  Projection proj = ls.state.project_out(ls.value_qubit(), kets::zero());
  out.simulated_prob = proj.probability;
  if (std::abs(out.simulated_prob - out.p_s) > 1e-10)
    throw std::logic_error("value projection disagrees with the analytic p_s");
  out.state = std::move(proj.post);
  if (out.state) *out.state = out.state->canonical();
  return out;
}

ResizedVector ComplexDecomposition::reconstruct() const {
  std::vector<cplx> v(va.size());
  const cplx i1(0.0, 1.0);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = va[k] - vb[k] + i1 * vc[k] - i1 * vd[k];
  return ResizedVector(std::move(v));
}

ComplexDecomposition decompose_complex(const ResizedVector& v) {
  const std::size_t n = v.size();
  std::vector<double> a(n), b(n), c(n), d(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = std::max(v[k].real(), 0.0);
    b[k] = std::max(-v[k].real(), 0.0);
    c[k] = std::max(v[k].imag(), 0.0);
    d[k] = std::max(-v[k].imag(), 0.0);
  }
  return {ResizedVector::real(a), ResizedVector::real(b), ResizedVector::real(c),
          ResizedVector::real(d)};
}

double complex_success_prob(const ComplexDecomposition& d) {
  const double n = static_cast<double>(d.va.size());
  const double sum_sq = d.va.sum_sq() + d.vb.sum_sq() + d.vc.sum_sq() + d.vd.sum_sq();
  const double prod = d.va.label_norm_sq() * d.vb.label_norm_sq() * d.vc.label_norm_sq() *
                      d.vd.label_norm_sq();
  return n * n * n * sum_sq / (64.0 * prod);
}

ComplexAssembly assemble_complex_outcome(const ComplexDecomposition& d,
                                         const std::array<LabelState, 4>& states) {
  const std::array<const ResizedVector*, 4> parts{&d.va, &d.vb, &d.vc, &d.vd};
  const unsigned n = states[0].n;
  for (int k = 0; k < 4; ++k) {
    check_label(states[k]);
    if (states[k].n != n || states[k].dim() != parts[k]->size() ||
        max_abs_diff(decode(states[k]), *parts[k]) > 1e-8)
      throw ValidationError("decode mismatch between decomposition and label states");
  }
  const unsigned w = n + 1;
  auto block = [&](unsigned k) { return 2 + k * w; };

  PureState joint = tensor(PureState::from_amplitudes({1.0, cplx(0.0, 1.0)}),
                           PureState::from_amplitudes({1.0, -1.0}));
  for (const LabelState& ls : states) joint = tensor(joint, ls.state);

  ComplexAssembly out;
  out.register_qubits = joint.num_qubits();
  out.psi0_norm_sq = joint.norm_sq();
  out.p_s_prime = complex_success_prob(d);

  // Polarities (0,1): a<->b, (1,0): a<->c, (1,1): a<->d.
  const bool pol[3][2] = {{false, true}, {true, false}, {true, true}};
  for (unsigned g = 0; g < 3; ++g)
    for (unsigned k = 0; k < w; ++k)
      joint.apply_ccswap(Qubit{0}, Qubit{1}, pol[g][0], pol[g][1], Qubit{block(0) + k},
                         Qubit{block(g + 1) + k});

  // Value qubits of d, c, b first (highest indices), then the two ancillas.
  double p = 1.0;
  std::optional<PureState> cur = std::move(joint);
  for (unsigned g = 3; g >= 1 && cur; --g) {
    Projection pr = cur->project_out(Qubit{block(g) + n}, kets::plus());
    p *= pr.probability;
    cur = std::move(pr.post);
  }
  for (unsigned anc = 2; anc-- > 0 && cur;) {
    Projection pr = cur->project_out(Qubit{anc}, kets::plus());
    p *= pr.probability;
    cur = std::move(pr.post);
  }
  out.simulated_prob = cur ? p : 0.0;
  if (std::abs(out.simulated_prob - out.p_s_prime) > 1e-10)
    throw std::logic_error("complex assembly probability disagrees with the analytic p_s'");
  if (!cur) return out;
  out.psi1_norm_sq = cur->norm_sq();

  // Remaining layout: block a (n label + value), then n label qubits each of b, c, d.
  const auto label_a = qubit_range(0, n);
  Factorization f = cur->factor_check(label_a);
  if (!f.is_product) throw std::logic_error("assembled state is entangled with the ancilla blocks");
  out.state = std::move(f.factor);
  return out;
}

ComplexResult assemble_complex(const ComplexDecomposition& d,
                               const std::array<LabelState, 4>& states, RngStream& rng) {
  ComplexResult r{assemble_complex_outcome(d, states), false};
  r.sampled_success = sample_successes(rng, 1, r.attempted.simulated_prob) == 1;
  return r;
}

}  // namespace qsprep
