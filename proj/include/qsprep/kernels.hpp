// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Low-level amplitude kernels. Positions are bit positions of the basis
// index (0 = least significant), not qubit labels.
//
// `serial` walks the full index space and tests bits; it is the reference.
// `omp` enumerates only the affected index subspace and splits it across
// threads. Both must agree to rounding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsprep/types.hpp"

namespace qsprep::kernels {

// A basis index matches when (index & mask) == value.
struct Condition {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
};

namespace serial {

void apply_1q(std::span<cplx> amps, unsigned pos, const Mat2& u);
void apply_cx(std::span<cplx> amps, unsigned control, unsigned target);
// Exchange bits a and b on every index that satisfies `when`.
void swap_bits(std::span<cplx> amps, Condition when, unsigned a, unsigned b);
double norm_sq(std::span<const cplx> amps);
// <psi| (|phi><phi| on pos) |psi>
double projected_norm_sq(std::span<const cplx> amps, unsigned pos, const Vec2& phi);
void apply_projector(std::span<cplx> amps, unsigned pos, const Vec2& phi);
// Contract bit `pos` with <phi|; result has half the length.
std::vector<cplx> contract(std::span<const cplx> amps, unsigned pos, const Vec2& phi);
void scale(std::span<cplx> amps, double factor);

}  // namespace serial

namespace omp {

void apply_1q(std::span<cplx> amps, unsigned pos, const Mat2& u);
void apply_cx(std::span<cplx> amps, unsigned control, unsigned target);
void swap_bits(std::span<cplx> amps, Condition when, unsigned a, unsigned b);
double norm_sq(std::span<const cplx> amps);
double projected_norm_sq(std::span<const cplx> amps, unsigned pos, const Vec2& phi);
void apply_projector(std::span<cplx> amps, unsigned pos, const Vec2& phi);
std::vector<cplx> contract(std::span<const cplx> amps, unsigned pos, const Vec2& phi);
void scale(std::span<cplx> amps, double factor);

}  // namespace omp

// Below this length the omp kernels run on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

// Thread cap shared by all parallel regions; 0 leaves the runtime default.
void set_thread_cap(int threads);
int thread_cap();

}  // namespace qsprep::kernels
