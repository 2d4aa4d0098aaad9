// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/rng.hpp"

#include <random>

namespace qsprep {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
  std::uint64_t k = mix64(parent + 0x9e3779b97f4a7c15ULL);
  for (std::uint64_t p : path) k = mix64(k ^ mix64(p + 0x632be59bd9b4e019ULL));
  return k;
}

std::int64_t sample_successes(RngStream& rng, std::int64_t cmin, double p) {
  if (cmin <= 0) return 0;
  if (p >= 1.0) return cmin;
  if (p <= 0.0) return 0;
  if (cmin == 1) return std::bernoulli_distribution(p)(rng) ? 1 : 0;
  return std::binomial_distribution<std::int64_t>(cmin, p)(rng);
}

}  // namespace qsprep
