// Copyright 2026 The minival Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINIVAL_RNG_HPP
#define MINIVAL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "minival/errors.hpp"

namespace minival {

/// splitmix64 finalizer; the standard mixer for deriving seed material.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent substream seed from a master seed and up to three
/// stream selectors. Every seeded component of the pipeline draws its own
/// substream this way, so results never depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = mix64(seed ^ 0x6d696e6976616cULL);  // "minival"
  h = mix64(h ^ tag);
  h = mix64(h ^ a);
  return mix64(h ^ b);
}

/// Deterministic random source. std::mt19937_64 output is bit-exact across
/// platforms; the sampling helpers below avoid std::*_distribution, whose
/// results are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased integer in [0, bound) via rejection.
  std::uint64_t uniform_u64(std::uint64_t bound) {
    if (bound == 0) throw ConfigInvalid("uniform_u64: bound must be positive");
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ConfigInvalid("uniform_int: empty range");
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<std::int64_t>(span == 0 ? next_u64()
                                                    : uniform_u64(span));
  }

  /// Real in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  /// Standard normal via Box-Muller (one value per call; the pair's second
  /// member is discarded to keep the draw count predictable).
  double gaussian() {
    double u = uniform_real();
    while (u <= 0.0) u = uniform_real();
    const double v = uniform_real();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * std::numbers::pi * v);
  }

  /// k distinct integers from [0, n), uniform over k-subsets, in draw order
  /// (partial Fisher-Yates).
  std::vector<std::int32_t> sample_without_replacement(std::int32_t n,
                                                       std::int32_t k) {
    if (k < 0 || n < 0 || k > n)
      throw ConfigInvalid("sample_without_replacement: need 0 <= k <= n");
    std::vector<std::int32_t> pool(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (std::int32_t i = 0; i < k; ++i) {
      const auto j = static_cast<std::int32_t>(
          uniform_u64(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)],
                pool[static_cast<std::size_t>(i + j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_u64(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace minival

#endif  // MINIVAL_RNG_HPP
