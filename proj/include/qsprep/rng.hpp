// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace qsprep {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
// Key of an independent substream, e.g. derive_key(seed, {trial, level, index}).
std::uint64_t derive_key(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

// Counter-based SplitMix64 stream; satisfies UniformRandomBitGenerator.
// Eight bytes of state, so one per tree node is cheap.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t key = 0) : state_(mix64(key ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Copies out of `cmin` attempts that succeed with probability p.
std::int64_t sample_successes(RngStream& rng, std::int64_t cmin, double p);

}  // namespace qsprep
