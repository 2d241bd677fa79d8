// Copyright 2026 The infoeff Authors
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

#pragma once

// Portable seeded randomness. The standard <random> distributions are
// implementation-defined, so every variate used for simulation or bootstrap
// is produced here from integer arithmetic on a fixed generator:
//
//   generator   xoshiro256** 1.0 (Blackman & Vigna)
//   seeding     SplitMix64 expansion of the 64-bit seed
//   streams     stream(seed, i) seeds from SplitMix64(mix(seed) ^ mix(i + 1))
//   uniform     top 53 bits * 2^-53, in [0, 1)
//   bounded     Lemire's multiply-shift with rejection

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "infoeff/error.hpp"

namespace infoeff {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// One-shot finalizer of a single value.
  static constexpr std::uint64_t mix(std::uint64_t v) { return SplitMix64(v)(); }

 private:
  std::uint64_t state_;
};

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& s : s_) s = sm();
  }

  /// Independent generator for run `index` under a user seed.
  static constexpr Xoshiro256 stream(std::uint64_t seed, std::uint64_t index) {
    return Xoshiro256(SplitMix64::mix(seed) ^ SplitMix64::mix(index + 1));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Index i with probability cumulative[i] - cumulative[i-1].
inline std::size_t sample_cumulative(Xoshiro256& rng, std::span<const double> cumulative) {
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  return cumulative.size() - 1;
}

/// Cumulative table for sample_cumulative. The entry of the last outcome
/// with positive mass is raised above one, so rounding in the running sum
/// can never select a trailing zero-probability outcome.
inline std::vector<double> cumulative_of(std::span<const double> probs) {
  std::vector<double> c(probs.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    c[i] = acc;
    if (probs[i] > 0.0) last_positive = i;
  }
  for (std::size_t i = last_positive; i < c.size(); ++i) c[i] = 2.0;
  return c;
}

namespace detail {

// log(k!) - Stirling approximation, tabulated for small k.
inline double stirling_tail(double k) {
  static constexpr double kTail[] = {0.0810614667953272,  0.0413406959554092,  0.0276779256849983,
                                     0.02079067210376509, 0.0166446911898211,  0.0138761288230707,
                                     0.0118967099458917,  0.0104112652619720,  0.00925546218271273,
                                     0.00833056343336287};
  if (k <= 9) return kTail[static_cast<int>(k)];
  const double kp1sq = (k + 1) * (k + 1);
  return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / (k + 1);
}

// Sum of geometric waiting times; expected cost O(n p).
inline std::uint64_t binomial_inversion(Xoshiro256& rng, std::uint64_t n, double p) {
  const double log_q = std::log1p(-p);
  double total = 0.0;
  std::uint64_t hits = 0;
  while (true) {
    double u = rng.uniform();
    // log(0) would be -inf; 1 - u lies in (0, 1].
    total += std::ceil(std::log(1.0 - u) / log_q);
    if (total > static_cast<double>(n)) return hits;
    ++hits;
  }
}

// Hormann's transformed rejection with squeeze (BTRS); valid for n p >= 10.
inline std::uint64_t binomial_btrs(Xoshiro256& rng, std::uint64_t count, double p) {
  const double n = static_cast<double>(count);
  const double stddev = std::sqrt(n * p * (1 - p));
  const double b = 1.15 + 2.53 * stddev;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double r = p / (1 - p);
  const double alpha = (2.83 + 5.1 / b) * stddev;
  const double m = std::floor((n + 1) * p);
  while (true) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2 * a / us + b) * u + c);
    if (k < 0 || k > n) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound = (m + 0.5) * std::log((m + 1) / (r * (n - m + 1))) +
                         (n + 1) * std::log((n - m + 1) / (n - k + 1)) +
                         (k + 0.5) * std::log(r * (n - k + 1) / (k + 1)) + stirling_tail(m) +
                         stirling_tail(n - m) - stirling_tail(k) - stirling_tail(n - k);
    if (v <= bound) return static_cast<std::uint64_t>(k);
  }
}

}  // namespace detail

/// Binomial(n, p) variate.
inline std::uint64_t sample_binomial(Xoshiro256& rng, std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::DomainViolation, "binomial probability outside [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(rng, n, 1.0 - p);
  if (static_cast<double>(n) * p < 10.0) return detail::binomial_inversion(rng, n, p);
  return detail::binomial_btrs(rng, n, p);
}

/// Multinomial(n, weights) counts through sequential conditional binomials.
/// Weights need not be normalized.
inline std::vector<std::uint64_t> sample_multinomial(Xoshiro256& rng, std::uint64_t n,
                                                     std::span<const double> weights) {
  std::vector<std::uint64_t> counts(weights.size(), 0);
  std::uint64_t remaining = n;
  for (std::size_t i = 0; i + 1 < weights.size() && remaining > 0; ++i) {
    // Tail mass is summed afresh so a trailing zero weight gets p = 1 before it.
    double tail = 0.0;
    for (std::size_t j = i; j < weights.size(); ++j) tail += weights[j];
    const double p = tail > 0.0 ? std::min(1.0, weights[i] / tail) : 0.0;
    counts[i] = sample_binomial(rng, remaining, p);
    remaining -= counts[i];
  }
  if (!weights.empty()) counts.back() += remaining;
  return counts;
}

}  // namespace infoeff
