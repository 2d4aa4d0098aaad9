// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <utility>

namespace qsprep::kernels {

namespace {

constexpr std::uint64_t bit(unsigned pos) { return std::uint64_t{1} << pos; }
constexpr bool has(std::uint64_t i, unsigned pos) { return (i >> pos) & 1U; }
bool matches(std::uint64_t i, Condition c) { return (i & c.mask) == c.value; }

cplx bra_dot(const Vec2& phi, cplx a0, cplx a1) {
  return std::conj(phi[0]) * a0 + std::conj(phi[1]) * a1;
}

// Spread k over the zero positions of `fixed` (a sorted list of bit positions).
std::uint64_t insert_zeros(std::uint64_t k, const unsigned* fixed, unsigned count) {
  for (unsigned f = 0; f < count; ++f) {
    const unsigned p = fixed[f];
    k = ((k >> p) << (p + 1)) | (k & (bit(p) - 1));
  }
  return k;
}

std::uint64_t insert_zero(std::uint64_t k, unsigned pos) {
  return ((k >> pos) << (pos + 1)) | (k & (bit(pos) - 1));
}

int g_thread_cap = 0;

}  // namespace

void set_thread_cap(int threads) {
  g_thread_cap = threads > 0 ? threads : 0;
  if (g_thread_cap > 0) omp_set_num_threads(g_thread_cap);
}

int thread_cap() { return g_thread_cap; }

namespace serial {

void apply_1q(std::span<cplx> amps, unsigned pos, const Mat2& u) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (has(i, pos)) continue;
    const std::uint64_t j = i | bit(pos);
    const cplx a0 = amps[i], a1 = amps[j];
    amps[i] = u[0] * a0 + u[1] * a1;
    amps[j] = u[2] * a0 + u[3] * a1;
  }
}

void apply_cx(std::span<cplx> amps, unsigned control, unsigned target) {
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if (has(i, control) && !has(i, target)) std::swap(amps[i], amps[i | bit(target)]);
}

void swap_bits(std::span<cplx> amps, Condition when, unsigned a, unsigned b) {
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if (matches(i, when) && has(i, a) && !has(i, b))
      std::swap(amps[i], amps[i ^ bit(a) ^ bit(b)]);
}

double norm_sq(std::span<const cplx> amps) {
  double s = 0.0;
  for (const cplx& a : amps) s += std::norm(a);
  return s;
}

double projected_norm_sq(std::span<const cplx> amps, unsigned pos, const Vec2& phi) {
  double s = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if (!has(i, pos)) s += std::norm(bra_dot(phi, amps[i], amps[i | bit(pos)]));
  return s;
}

void apply_projector(std::span<cplx> amps, unsigned pos, const Vec2& phi) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (has(i, pos)) continue;
    const std::uint64_t j = i | bit(pos);
    const cplx c = bra_dot(phi, amps[i], amps[j]);
    amps[i] = phi[0] * c;
    amps[j] = phi[1] * c;
  }
}

std::vector<cplx> contract(std::span<const cplx> amps, unsigned pos, const Vec2& phi) {
  std::vector<cplx> out(amps.size() / 2);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (has(i, pos)) continue;
    const std::uint64_t low = i & (bit(pos) - 1);
    const std::uint64_t high = i >> (pos + 1);
    out[(high << pos) | low] = bra_dot(phi, amps[i], amps[i | bit(pos)]);
  }
  return out;
}

void scale(std::span<cplx> amps, double factor) {
  for (cplx& a : amps) a *= factor;
}

}  // namespace serial

namespace omp {

void apply_1q(std::span<cplx> amps, unsigned pos, const Mat2& u) {
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  cplx* data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < half; ++k) {
    const std::uint64_t i = insert_zero(static_cast<std::uint64_t>(k), pos);
    const std::uint64_t j = i | bit(pos);
    const cplx a0 = data[i], a1 = data[j];
    data[i] = u[0] * a0 + u[1] * a1;
    data[j] = u[2] * a0 + u[3] * a1;
  }
}

void apply_cx(std::span<cplx> amps, unsigned control, unsigned target) {
  const unsigned fixed[2] = {std::min(control, target), std::max(control, target)};
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
  cplx* data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < quarter; ++k) {
    const std::uint64_t i = insert_zeros(static_cast<std::uint64_t>(k), fixed, 2) | bit(control);
    std::swap(data[i], data[i | bit(target)]);
  }
}

void swap_bits(std::span<cplx> amps, Condition when, unsigned a, unsigned b) {
  unsigned fixed[64];
  unsigned count = 0;
  const std::uint64_t all = when.mask | bit(a) | bit(b);
  for (unsigned p = 0; p < 64; ++p)
    if (has(all, p)) fixed[count++] = p;
  const auto n = static_cast<std::int64_t>(amps.size() >> count);
  cplx* data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < n; ++k) {
    const std::uint64_t base = insert_zeros(static_cast<std::uint64_t>(k), fixed, count) | when.value;
    std::swap(data[base | bit(a)], data[base | bit(b)]);
  }
}

double norm_sq(std::span<const cplx> amps) {
  const auto n = static_cast<std::int64_t>(amps.size());
  const cplx* data = amps.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < n; ++k) s += std::norm(data[k]);
  return s;
}

double projected_norm_sq(std::span<const cplx> amps, unsigned pos, const Vec2& phi) {
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  const cplx* data = amps.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < half; ++k) {
    const std::uint64_t i = insert_zero(static_cast<std::uint64_t>(k), pos);
    s += std::norm(bra_dot(phi, data[i], data[i | bit(pos)]));
  }
  return s;
}

void apply_projector(std::span<cplx> amps, unsigned pos, const Vec2& phi) {
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  cplx* data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < half; ++k) {
    const std::uint64_t i = insert_zero(static_cast<std::uint64_t>(k), pos);
    const std::uint64_t j = i | bit(pos);
    const cplx c = bra_dot(phi, data[i], data[j]);
    data[i] = phi[0] * c;
    data[j] = phi[1] * c;
  }
}

std::vector<cplx> contract(std::span<const cplx> amps, unsigned pos, const Vec2& phi) {
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  std::vector<cplx> out(amps.size() / 2);
  const cplx* data = amps.data();
  cplx* dst = out.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < half; ++k) {
    const std::uint64_t i = insert_zero(static_cast<std::uint64_t>(k), pos);
    dst[k] = bra_dot(phi, data[i], data[i | bit(pos)]);
  }
  return out;
}

void scale(std::span<cplx> amps, double factor) {
  const auto n = static_cast<std::int64_t>(amps.size());
  cplx* data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t k = 0; k < n; ++k) data[k] *= factor;
}

}  // namespace omp

}  // namespace qsprep::kernels
