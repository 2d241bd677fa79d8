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

// Shannon quantities in bits. Every logarithm here is base 2 and terms with
// zero probability contribute nothing (0 log 0 = 0).

#include <cmath>
#include <compare>
#include <span>
#include <string>

#include "infoeff/error.hpp"
#include "infoeff/probability.hpp"

namespace infoeff {

/// An information quantity measured in bits.
class Bits {
 public:
  constexpr Bits() = default;
  constexpr explicit Bits(double value) : value_(value) {}

  constexpr double value() const noexcept { return value_; }

  friend constexpr Bits operator+(Bits a, Bits b) { return Bits(a.value_ + b.value_); }
  friend constexpr Bits operator-(Bits a, Bits b) { return Bits(a.value_ - b.value_); }
  friend constexpr double operator/(Bits a, Bits b) { return a.value_ / b.value_; }
  friend constexpr auto operator<=>(Bits, Bits) = default;

 private:
  double value_ = 0.0;
};

/// Rounding slack below zero that is silently clamped for quantities that
/// are nonnegative in exact arithmetic.
inline constexpr double kClampTolerance = 1e-12;

namespace detail {

inline double clamp_nonnegative(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v >= -kClampTolerance) return 0.0;
  throw Error(ErrorKind::InternalConsistency, std::string(what) + " is negative: " + std::to_string(v));
}

inline double entropy_of(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace detail

/// H(X) = -sum p(x) log2 p(x).
inline Bits entropy(const Distribution& dist) { return Bits(detail::entropy_of(dist.probs())); }

/// H(X|Y) = -sum_y p(y) sum_x p(x|y) log2 p(x|y). Signals with p(y) = 0 are
/// skipped.
inline Bits conditional_entropy(const JointSystem& joint) {
  double h = 0.0;
  for (std::size_t y = 0; y < joint.signals(); ++y) {
    double py = 0.0;
    for (std::size_t x = 0; x < joint.outcomes(); ++x) py += joint(x, y);
    if (!(py > 0.0)) continue;
    double inner = 0.0;
    for (std::size_t x = 0; x < joint.outcomes(); ++x) {
      const double post = joint(x, y) / py;
      if (post > 0.0) inner -= post * std::log2(post);
    }
    h += py * inner;
  }
  return Bits(h);
}

/// M(X,Y) = H(X) - H(X|Y).
inline Bits mutual_information(const JointSystem& joint) {
  const double m = entropy(marginal_outcome(joint)).value() - conditional_entropy(joint).value();
  return Bits(detail::clamp_nonnegative(m, "mutual information"));
}

/// H(q) = -sum p(x) log2 q(x), the expected log-cost of quoting q when the
/// outcomes follow p.
inline Bits cross_entropy(const Distribution& p, const Distribution& q) {
  if (p.labels() != q.labels()) {
    throw Error(ErrorKind::LabelMismatch, "cross-entropy over different alphabets " + detail::join_labels(p.labels()) +
                                              " and " + detail::join_labels(q.labels()));
  }
  double h = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!(p[x] > 0.0)) continue;
    if (!(q[x] > 0.0)) {
      throw Error(ErrorKind::UnsupportedOutcome,
                  "outcome '" + p.labels()[x] + "' has positive probability but zero quote probability");
    }
    h -= p[x] * std::log2(q[x]);
  }
  return Bits(h);
}

/// H(alpha) = sum p(x) log2 alpha_x for payout multipliers alpha.
inline Bits quote_entropy(const Distribution& p, std::span<const double> alpha) {
  if (alpha.size() != p.size()) {
    throw Error(ErrorKind::InvalidArgument, "quote vector length differs from the alphabet");
  }
  double h = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!(p[x] > 0.0)) continue;
    if (!(alpha[x] > 0.0)) {
      throw Error(ErrorKind::NonpositiveQuote, "quote for '" + p.labels()[x] + "' is not positive");
    }
    h += p[x] * std::log2(alpha[x]);
  }
  return Bits(h);
}

}  // namespace infoeff
