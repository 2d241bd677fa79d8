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

// The coin-toss system: outcomes {h, t}, a signal that names the coming
// outcome with a symmetric accuracy, and quotes paying 1/q per unit staked.
// Closed forms for the curves are kept here so they can be checked against
// the general measures.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoeff/efficiency.hpp"
#include "infoeff/error.hpp"
#include "infoeff/information.hpp"
#include "infoeff/probability.hpp"

namespace infoeff::coin {

inline const std::vector<Label>& labels() {
  static const std::vector<Label> kLabels{"h", "t"};
  return kLabels;
}

struct CoinGameParams {
  double p_tail = 0.5;    // p(x = t)
  double accuracy = 0.5;  // p(y = x)
  double q_tail = 0.5;    // quote probability for t

  void validate() const {
    if (!(p_tail >= 0.0 && p_tail <= 1.0)) {
      throw Error(ErrorKind::DomainViolation, "p_tail " + std::to_string(p_tail) + " outside [0,1]");
    }
    if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
      throw Error(ErrorKind::DomainViolation, "accuracy " + std::to_string(accuracy) + " outside [0,1]");
    }
    if (!(q_tail > 0.0 && q_tail < 1.0)) {
      throw Error(ErrorKind::DomainViolation, "q_tail " + std::to_string(q_tail) + " outside (0,1)");
    }
  }

  /// Payout per unit on tail, 1/q_tail.
  double alpha_tail() const { return 1.0 / q_tail; }
  /// Payout per unit on head; equals alpha_t / (alpha_t - 1).
  double alpha_head() const { return 1.0 / (1.0 - q_tail); }
};

struct CoinSystem {
  JointSystem joint;
  Distribution quotes;
};

inline CoinSystem coin_joint(const CoinGameParams& params) {
  params.validate();
  auto prior = make_distribution(labels(), {1.0 - params.p_tail, params.p_tail});
  auto channel = symmetric_channel(labels(), params.accuracy);
  auto quotes = make_quotes(labels(), {1.0 - params.q_tail, params.q_tail});
  return CoinSystem{joint_from_prior_channel(prior, channel), std::move(quotes)};
}

/// -p log2 p - (1-p) log2 (1-p), zero at both endpoints.
inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

namespace detail {

inline void require_closed(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorKind::DomainViolation, std::string(name) + " " + std::to_string(v) + " outside [0,1]");
  }
}

inline void require_open(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorKind::DomainViolation, std::string(name) + " " + std::to_string(v) + " outside (0,1)");
  }
}

}  // namespace detail

/// Efficiency of a fair coin with fair quotes as a function of the signal
/// accuracy: the binary entropy of the accuracy.
inline double closed_form_efficiency_fair(double accuracy) {
  detail::require_closed(accuracy, "accuracy");
  return binary_entropy(accuracy);
}

/// H(X) of a coin showing tail with probability p_tail.
inline Bits closed_form_entropy(double p_tail) {
  detail::require_closed(p_tail, "p_tail");
  return Bits(binary_entropy(p_tail));
}

/// H(q) for a fair coin quoted at q_tail:
/// -0.5 log2 q - 0.5 log2 (1 - q). Symmetric, minimal (1 bit) at q = 0.5.
inline Bits closed_form_quote_entropy(double q_tail) {
  detail::require_open(q_tail, "q_tail");
  return Bits(-0.5 * std::log2(q_tail) - 0.5 * std::log2(1.0 - q_tail));
}

/// Eff_q of a fair, unpredictable coin: H(X|Y) = 1, so Eff_q = 1 / H(q).
inline double closed_form_efficiency_unfair_quotes(double q_tail) {
  return 1.0 / closed_form_quote_entropy(q_tail).value();
}

/// Every report field in closed form for arbitrary coin parameters.
/// H(X|Y) = H(X) + H(Y|X) - H(Y) with H(Y|X) = h(accuracy) and
/// p(y = t) = p_tail * a + (1 - p_tail) * (1 - a).
struct ClosedFormReport {
  Bits h_x;
  Bits h_x_given_y;
  Bits h_q;
  std::optional<double> eff;
  double eff_q = 0.0;
  Bits g_max;
  Bits g_max_q;
};

inline ClosedFormReport closed_form_report(const CoinGameParams& params) {
  params.validate();
  const double p = params.p_tail;
  const double a = params.accuracy;
  const double py_tail = p * a + (1.0 - p) * (1.0 - a);
  const double hx = binary_entropy(p);
  double hxy = hx + binary_entropy(a) - binary_entropy(py_tail);
  if (hxy < 0.0) hxy = 0.0;
  double hq = 0.0;
  if (p > 0.0) hq -= p * std::log2(params.q_tail);
  if (p < 1.0) hq -= (1.0 - p) * std::log2(1.0 - params.q_tail);

  ClosedFormReport r;
  r.h_x = Bits(hx);
  r.h_x_given_y = Bits(hxy);
  r.h_q = Bits(hq);
  if (hx > 0.0) r.eff = hxy / hx;
  r.eff_q = hq > 0.0 ? hxy / hq : 0.0;
  r.g_max = Bits(hx - hxy);
  r.g_max_q = Bits(hq - hxy);
  return r;
}

enum class Curve { EffVsAccuracy, EntropyVsPTail, EffVsQ, HqVsQ };

inline std::string_view to_string(Curve c) {
  switch (c) {
    case Curve::EffVsAccuracy: return "eff_vs_accuracy";
    case Curve::EntropyVsPTail: return "entropy_vs_ptail";
    case Curve::EffVsQ: return "eff_vs_q";
    case Curve::HqVsQ: return "hq_vs_q";
  }
  return {};
}

inline Curve parse_curve(std::string_view text) {
  for (Curve c : {Curve::EffVsAccuracy, Curve::EntropyVsPTail, Curve::EffVsQ, Curve::HqVsQ}) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown curve '" + std::string(text) + "'");
}

/// True when the curve's parameter must stay strictly inside (0,1).
inline bool open_domain(Curve c) { return c == Curve::EffVsQ || c == Curve::HqVsQ; }

/// `points` evenly spaced values on [lo, hi]; with include_endpoints false
/// the first and last are dropped.
struct SweepGrid {
  std::size_t points = 1001;
  double lo = 0.0;
  double hi = 1.0;
  bool include_endpoints = true;
};

/// 1001 points on [0,1]; the quote curves drop the two endpoints.
inline SweepGrid default_grid(Curve c) {
  SweepGrid g;
  g.include_endpoints = !open_domain(c);
  return g;
}

struct SweepRow {
  double param;
  double value;
};

inline std::vector<double> grid_values(const SweepGrid& grid) {
  if (grid.points < 2) throw Error(ErrorKind::DomainViolation, "a sweep needs at least two grid points");
  if (!(grid.lo < grid.hi)) throw Error(ErrorKind::DomainViolation, "sweep range is empty");
  std::vector<double> xs;
  const double span = static_cast<double>(grid.points - 1);
  const std::size_t first = grid.include_endpoints ? 0 : 1;
  const std::size_t last = grid.include_endpoints ? grid.points : grid.points - 1;
  for (std::size_t i = first; i < last; ++i) {
    const double k = static_cast<double>(i);
    // Blend form keeps i/(n-1) grid points exact (0.5 lands on 0.5).
    xs.push_back((grid.lo * (span - k) + grid.hi * k) / span);
  }
  return xs;
}

inline double curve_value(Curve c, double x) {
  switch (c) {
    case Curve::EffVsAccuracy: return closed_form_efficiency_fair(x);
    case Curve::EntropyVsPTail: return closed_form_entropy(x).value();
    case Curve::EffVsQ: return closed_form_efficiency_unfair_quotes(x);
    case Curve::HqVsQ: return closed_form_quote_entropy(x).value();
  }
  return 0.0;
}

inline std::vector<SweepRow> sweep(Curve c, const SweepGrid& grid) {
  const auto xs = grid_values(grid);
  for (double x : {xs.front(), xs.back()}) {
    const bool ok = open_domain(c) ? (x > 0.0 && x < 1.0) : (x >= 0.0 && x <= 1.0);
    if (!ok) {
      throw Error(ErrorKind::DomainViolation, std::string(to_string(c)) + " is undefined at " + std::to_string(x));
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) rows.push_back({x, curve_value(c, x)});
  return rows;
}

inline std::vector<SweepRow> sweep(Curve c) { return sweep(c, default_grid(c)); }

}  // namespace infoeff::coin
