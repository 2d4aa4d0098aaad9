// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsprep/statevector.hpp"
#include "qsprep/types.hpp"

namespace qsprep {

// Unit-norm classical data u, length a power of two >= 2.
class AmplitudeVector {
 public:
  explicit AmplitudeVector(std::vector<cplx> entries);
  static AmplitudeVector normalized(std::vector<cplx> entries);

  std::size_t size() const { return entries_.size(); }
  unsigned num_qubits() const;
  std::span<const cplx> entries() const { return entries_; }
  cplx operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<cplx> entries_;
};

// Vector with |v_i| <= 1 that a label state encodes.
class ResizedVector {
 public:
  explicit ResizedVector(std::vector<cplx> entries);
  static ResizedVector real(const std::vector<double>& entries);

  std::size_t size() const { return entries_.size(); }
  unsigned num_qubits() const;
  bool positive_only() const { return positive_only_; }
  std::span<const cplx> entries() const { return entries_; }
  cplx operator[](std::size_t i) const { return entries_[i]; }

  // sum |v_i|^2 + |1 - v_i|^2
  double label_norm_sq() const;
  double sum_sq() const;
  std::pair<ResizedVector, ResizedVector> halves() const;
  ResizedVector slice(std::size_t offset, std::size_t count) const;

 private:
  std::vector<cplx> entries_;
  bool positive_only_ = false;
};

ResizedVector concat(const ResizedVector& a, const ResizedVector& b);
double max_abs_diff(const ResizedVector& a, const ResizedVector& b);

// Sum_i |n,i>(v_i|0> + (1 - v_i)|1>) with norm_sq = label_norm_sq(v).
struct LabelState {
  unsigned n = 0;
  PureState state{1};
  double norm_sq = 0.0;

  std::size_t dim() const { return std::size_t{1} << n; }
  Qubit value_qubit() const { return Qubit{n}; }
};

ResizedVector resize(const AmplitudeVector& u);
// Direct amplitude assignment for any power-of-two length.
LabelState encode(const ResizedVector& v);
LabelState build_base(const ResizedVector& v);
ResizedVector decode(const LabelState& ls);
PureState target_state(const AmplitudeVector& u);
// Amplitude encoding of an arbitrary nonzero vector (normalized).
PureState amplitude_state(std::span<const cplx> entries);

// |psi> = (U0 (x) I) then controlled-on-q0 choice of V0/V1 on q1, used as the
// two-qubit factorization of the base case.
struct TwoQubitFactorization {
  Mat2 first;      // on q0: |0> -> r0|0> + r1|1>
  Mat2 if_zero;    // on q1 when q0 = 0: |0> -> phi0
  Mat2 if_one;     // on q1 when q0 = 1: |0> -> phi1
};

TwoQubitFactorization factorize_two_qubit(const PureState& psi);
PureState apply_factorization(const TwoQubitFactorization& f);

// Vector file: one complex entry per line as "re im"; a lone token is a real
// entry. Blank lines and lines starting with '#' are skipped.
std::vector<cplx> parse_vector_text(std::string_view text);
std::vector<cplx> read_vector_file(const std::filesystem::path& path);
std::string format_vector_text(std::span<const cplx> entries);
// Append zeros up to length `dim`.
std::vector<cplx> zero_pad(std::vector<cplx> entries, std::size_t dim);

}  // namespace qsprep
