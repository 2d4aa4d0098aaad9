// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qsprep/error.hpp"
#include "qsprep/kernels.hpp"

namespace qsprep {

namespace kern = kernels::omp;

namespace {

void check_normalized(const Vec2& v) {
  if (std::abs(std::norm(v[0]) + std::norm(v[1]) - 1.0) > 1e-12)
    throw ValidationError("projection target is not normalized");
}

void check_distinct(std::initializer_list<Qubit> qs) {
  for (auto i = qs.begin(); i != qs.end(); ++i)
    for (auto j = std::next(i); j != qs.end(); ++j)
      if (*i == *j) throw ValidationError("duplicate qubit index " + std::to_string(i->index));
}

}  // namespace

PureState::PureState(unsigned num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw ValidationError("qubit count out of range: " + std::to_string(num_qubits));
  amps_.assign(std::size_t{1} << num_qubits, cplx{});
  amps_[0] = 1.0;
}

PureState::PureState(unsigned num_qubits, std::vector<cplx> amps, double norm_sq)
    : num_qubits_(num_qubits), amps_(std::move(amps)), norm_sq_(norm_sq) {}

PureState PureState::from_amplitudes(std::vector<cplx> amps, double scale) {
  const std::size_t n = amps.size();
  if (n < 2 || !std::has_single_bit(n))
    throw ValidationError("amplitude count must be a power of two >= 2");
  const auto qubits = static_cast<unsigned>(std::countr_zero(n));
  if (qubits > kMaxQubits) throw ValidationError("state exceeds the dense qubit cap");
  const double nrm = kern::norm_sq(amps);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ValidationError("zero-norm state");
  kern::scale(amps, 1.0 / std::sqrt(nrm));
  return PureState(qubits, std::move(amps), nrm * scale);
}

PureState PureState::from_ket(const Vec2& ket) { return from_amplitudes({ket[0], ket[1]}); }

void PureState::set_norm_sq(double value) {
  if (!(value >= 0.0)) throw ValidationError("norm_sq must be nonnegative");
  norm_sq_ = value;
}

unsigned PureState::pos(Qubit q) const { return num_qubits_ - 1 - q.index; }

void PureState::check_qubit(Qubit q) const {
  if (q.index >= num_qubits_)
    throw ValidationError("qubit index " + std::to_string(q.index) + " out of range");
}

void PureState::apply_1q(Qubit q, const Mat2& u) {
  check_qubit(q);
  if (!gates::is_unitary(u)) throw ValidationError("non-unitary gate");
  kern::apply_1q(amps_, pos(q), u);
}

void PureState::apply_cnot(Qubit control, Qubit target) {
  check_qubit(control);
  check_qubit(target);
  check_distinct({control, target});
  kern::apply_cx(amps_, pos(control), pos(target));
}

void PureState::apply_cswap(Qubit control, Qubit a, Qubit b) {
  for (Qubit q : {control, a, b}) check_qubit(q);
  check_distinct({control, a, b});
  const std::uint64_t c = std::uint64_t{1} << pos(control);
  kern::swap_bits(amps_, {c, c}, pos(a), pos(b));
}

void PureState::apply_ccswap(Qubit c1, Qubit c2, bool c1_polarity, bool c2_polarity, Qubit a,
                             Qubit b) {
  for (Qubit q : {c1, c2, a, b}) check_qubit(q);
  check_distinct({c1, c2, a, b});
  const std::uint64_t m1 = std::uint64_t{1} << pos(c1);
  const std::uint64_t m2 = std::uint64_t{1} << pos(c2);
  const kernels::Condition when{m1 | m2, (c1_polarity ? m1 : 0) | (c2_polarity ? m2 : 0)};
  kern::swap_bits(amps_, when, pos(a), pos(b));
}

double PureState::probability(Qubit q, const Vec2& onto) const {
  check_qubit(q);
  check_normalized(onto);
  return kern::projected_norm_sq(amps_, pos(q), onto);
}

Projection PureState::project(Qubit q, const Vec2& onto) const {
  const double p = probability(q, onto);
  Projection result{p, std::nullopt};
  if (!(p > 0.0)) return result;
  std::vector<cplx> amps = amps_;
  kern::apply_projector(amps, pos(q), onto);
  kern::scale(amps, 1.0 / std::sqrt(kern::norm_sq(amps)));
  result.post = PureState(num_qubits_, std::move(amps), norm_sq_ * p);
  return result;
}

Projection PureState::project_out(Qubit q, const Vec2& onto) const {
  check_qubit(q);
  check_normalized(onto);
  if (num_qubits_ == 1) throw ValidationError("cannot remove the only qubit");
  std::vector<cplx> amps = kern::contract(amps_, pos(q), onto);
  const double p = kern::norm_sq(amps);
  Projection result{p, std::nullopt};
  if (!(p > 0.0)) return result;
  kern::scale(amps, 1.0 / std::sqrt(p));
  result.post = PureState(num_qubits_ - 1, std::move(amps), norm_sq_ * p);
  return result;
}

Factorization PureState::factor_check(std::span<const Qubit> subset) const {
  if (subset.empty() || subset.size() >= num_qubits_)
    throw ValidationError("factor_check subset must be nonempty and proper");
  std::vector<bool> in_subset(num_qubits_, false);
  for (Qubit q : subset) {
    check_qubit(q);
    if (in_subset[q.index]) throw ValidationError("duplicate qubit index in subset");
    in_subset[q.index] = true;
  }
  std::vector<unsigned> rest;
  for (unsigned q = 0; q < num_qubits_; ++q)
    if (!in_subset[q]) rest.push_back(q);

  const auto k = static_cast<unsigned>(subset.size());
  const auto r = static_cast<unsigned>(rest.size());
  const std::size_t rows = std::size_t{1} << k, cols = std::size_t{1} << r;

  // M[s][t] = amplitude with subset bits s and remaining bits t.
  std::vector<cplx> m(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    std::size_t s = 0, t = 0;
    for (unsigned j = 0; j < k; ++j) s = (s << 1) | ((i >> pos(subset[j])) & 1U);
    for (unsigned j = 0; j < r; ++j) t = (t << 1) | ((i >> pos(Qubit{rest[j]})) & 1U);
    m[s * cols + t] = amps_[i];
  }

  double purity = 0.0;
  if (rows <= cols) {
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < rows; ++b) {
        cplx rho = 0.0;
        for (std::size_t t = 0; t < cols; ++t) rho += m[a * cols + t] * std::conj(m[b * cols + t]);
        purity += std::norm(rho);
      }
  } else {
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t d = 0; d < cols; ++d) {
        cplx rho = 0.0;
        for (std::size_t s = 0; s < rows; ++s) rho += m[s * cols + c] * std::conj(m[s * cols + d]);
        purity += std::norm(rho);
      }
  }

  Factorization result;
  result.purity = std::min(purity, 1.0);
  result.is_product = purity >= 1.0 - 1e-10;
  if (!result.is_product) return result;

  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t t = 0; t < cols; ++t) {
    double col = 0.0;
    for (std::size_t s = 0; s < rows; ++s) col += std::norm(m[s * cols + t]);
    if (col > best_norm) {
      best_norm = col;
      best = t;
    }
  }
  std::vector<cplx> f(rows);
  for (std::size_t s = 0; s < rows; ++s) f[s] = m[s * cols + best];
  result.factor = from_amplitudes(std::move(f)).canonical();
  return result;
}

PureState PureState::canonical() const {
  double peak = 0.0;
  for (const cplx& a : amps_) peak = std::max(peak, std::abs(a));
  PureState out = *this;
  for (const cplx& a : amps_) {
    if (std::abs(a) > 1e-8 * peak) {
      const cplx rot = std::conj(a) / std::abs(a);
      for (cplx& b : out.amps_) b *= rot;
      break;
    }
  }
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  const unsigned n = a.num_qubits_ + b.num_qubits_;
  if (n > PureState::kMaxQubits) throw ValidationError("state exceeds the dense qubit cap");
  std::vector<cplx> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a.amps_[i] * b.amps_[j];
  return PureState(n, std::move(amps), a.norm_sq_ * b.norm_sq_);
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ValidationError("fidelity of states with different dimension");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitude(i)) * b.amplitude(i);
  return std::norm(s);
}

double max_abs_diff(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ValidationError("comparing states with different dimension");
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a.amplitude(i) - b.amplitude(i)));
  return d;
}

}  // namespace qsprep
