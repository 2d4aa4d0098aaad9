// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
// Test-side helpers. Oracles here are written independently of src/.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qsprep/statevector.hpp"
#include "qsprep/types.hpp"

namespace qsprep::test {

inline std::vector<cplx> random_vector(std::mt19937_64& g, std::size_t dim) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(dim);
  double s = 0;
  for (auto& x : v) {
    x = cplx(d(g), d(g));
    s += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

inline PureState random_state(std::mt19937_64& g, unsigned n) {
  return PureState::from_amplitudes(random_vector(g, std::size_t{1} << n));
}

// Haar-ish random 2x2 unitary from a normalized random column pair.
inline Mat2 random_unitary(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  const double th = u(g) / 4, a = u(g), b = u(g), c = u(g);
  const cplx e = std::polar(1.0, c);
  return {e * std::polar(std::cos(th), a), e * -std::polar(std::sin(th), -b),
          e * std::polar(std::sin(th), b), e * std::polar(std::cos(th), -a)};
}

// Bit of qubit q (0 = MSB) in basis index k of an n-qubit register.
inline unsigned bit(std::size_t k, unsigned q, unsigned n) { return (k >> (n - 1 - q)) & 1u; }

inline std::size_t with_bit(std::size_t k, unsigned q, unsigned n, unsigned b) {
  const std::size_t m = std::size_t{1} << (n - 1 - q);
  return b ? (k | m) : (k & ~m);
}

inline double max_diff(const std::vector<cplx>& a, std::span<const cplx> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Kronecker product, first argument on the leading qubits.
inline std::vector<cplx> kron(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

// Unnormalized label ket sum_i |i>(v_i|0> + (1 - v_i)|1>).
inline std::vector<cplx> label_ket(const std::vector<cplx>& v) {
  std::vector<cplx> r(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[2 * i] = v[i];
    r[2 * i + 1] = 1.0 - v[i];
  }
  return r;
}

inline double norm_sq(const std::vector<cplx>& a) {
  double s = 0;
  for (cplx x : a) s += std::norm(x);
  return s;
}

// |<a|b>|^2 / (|a|^2 |b|^2)
inline double overlap(const std::vector<cplx>& a, std::span<const cplx> b) {
  cplx ip = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ip += std::conj(a[i]) * b[i];
    nb += std::norm(b[i]);
  }
  return std::norm(ip) / (norm_sq(a) * nb);
}

inline std::vector<double> random_positive(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(g);
  return v;
}

inline std::vector<cplx> to_cplx(const std::vector<double>& v) { return {v.begin(), v.end()}; }

}  // namespace qsprep::test
