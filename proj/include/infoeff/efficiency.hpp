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

// Entropy-based efficiency of an event-generating system.
//
//   Eff(X|Y)   = H(X|Y) / H(X)        fair quotes
//   Eff_q(X|Y) = H(X|Y) / H(q)        quotes q with sum q = 1
//   G_max      = H(X) - H(X|Y)        best log2 growth per round, fair quotes
//   G_max,q    = H(q) - H(X|Y)        same under quotes q
//
// G_max,q splits into a predictability gap H(X) - H(X|Y) and a mispricing
// gap H(q) - H(X); both are nonnegative.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoeff/error.hpp"
#include "infoeff/information.hpp"
#include "infoeff/probability.hpp"

namespace infoeff {

/// Names the information set a signal stands for. Purely descriptive: the
/// numbers depend only on the channel that was supplied.
class InfoSetLabel {
 public:
  enum class Kind { Weak, SemiStrong, Strong, Custom };

  static InfoSetLabel weak() { return InfoSetLabel(Kind::Weak, {}); }
  static InfoSetLabel semi_strong() { return InfoSetLabel(Kind::SemiStrong, {}); }
  static InfoSetLabel strong() { return InfoSetLabel(Kind::Strong, {}); }
  static InfoSetLabel custom(std::string name) {
    if (name.empty()) throw Error(ErrorKind::InvalidArgument, "custom information set needs a name");
    return InfoSetLabel(Kind::Custom, std::move(name));
  }

  /// Accepts "weak", "semi_strong", "strong", "custom:<name>" or any other
  /// non-empty token, which becomes a custom label.
  static InfoSetLabel parse(std::string_view text) {
    if (text == "weak") return weak();
    if (text == "semi_strong") return semi_strong();
    if (text == "strong") return strong();
    if (text.starts_with("custom:")) return custom(std::string(text.substr(7)));
    return custom(std::string(text));
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Weak: return "weak";
      case Kind::SemiStrong: return "semi_strong";
      case Kind::Strong: return "strong";
      case Kind::Custom: return "custom:" + name_;
    }
    return {};
  }

  friend bool operator==(const InfoSetLabel&, const InfoSetLabel&) = default;

 private:
  InfoSetLabel(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

struct EfficiencyReport {
  Bits h_x;
  Bits h_x_given_y;
  std::optional<Bits> h_q;
  /// Absent only for a quoted system whose outcome is certain (H(X) = 0).
  std::optional<double> eff;
  std::optional<double> eff_q;
  Bits g_max;
  std::optional<Bits> g_max_q;
  Bits predictability_gap;
  std::optional<Bits> mispricing_gap;
  InfoSetLabel info_set = InfoSetLabel::strong();
};

namespace detail {

inline double unit_ratio(double num, double den, const char* what) {
  double r = num / den;
  if (r > 1.0) {
    if (r - 1.0 > kClampTolerance) {
      throw Error(ErrorKind::InternalConsistency, std::string(what) + " exceeds one: " + std::to_string(r));
    }
    r = 1.0;
  }
  return clamp_nonnegative(r, what);
}

}  // namespace detail

/// Builds a quote distribution from raw values, reporting a bad sum as
/// QuoteSumNotOne. Quotes are never rescaled.
inline Distribution make_quotes(std::vector<Label> labels, std::vector<double> q) {
  try {
    return make_distribution(std::move(labels), std::move(q));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SumNotOne) throw Error(ErrorKind::QuoteSumNotOne, e.what());
    throw;
  }
}

/// Quotes q from payout multipliers alpha_x = 1 / q_x.
inline Distribution quotes_from_payouts(std::vector<Label> labels, const std::vector<double>& alpha) {
  std::vector<double> q;
  q.reserve(alpha.size());
  for (double a : alpha) {
    if (!(a > 0.0)) throw Error(ErrorKind::NonpositiveQuote, "payout multiplier must be positive");
    q.push_back(1.0 / a);
  }
  return make_quotes(std::move(labels), std::move(q));
}

/// G_max = H(X) - H(X|Y); zero for a certain outcome.
inline Bits max_growth(const JointSystem& joint) {
  const double g = entropy(marginal_outcome(joint)).value() - conditional_entropy(joint).value();
  return Bits(detail::clamp_nonnegative(g, "predictability gap"));
}

/// G_max,q = H(q) - H(X|Y).
inline Bits max_growth_q(const JointSystem& joint, const Distribution& quotes) {
  const double g = cross_entropy(marginal_outcome(joint), quotes).value() - conditional_entropy(joint).value();
  return Bits(detail::clamp_nonnegative(g, "growth under quotes"));
}

/// Eff(X|Y) for fair quotes. A system with H(X) = 0 has no defined
/// efficiency and is rejected.
inline EfficiencyReport efficiency(const JointSystem& joint, InfoSetLabel info_set = InfoSetLabel::strong()) {
  const Bits hx = entropy(marginal_outcome(joint));
  if (!(hx.value() > 0.0)) {
    throw Error(ErrorKind::DegenerateSystem, "H(X) = 0: the outcome is certain and efficiency is undefined");
  }
  const Bits hxy = conditional_entropy(joint);
  EfficiencyReport r;
  r.h_x = hx;
  r.h_x_given_y = hxy;
  r.eff = detail::unit_ratio(hxy.value(), hx.value(), "efficiency");
  r.predictability_gap = Bits(detail::clamp_nonnegative((hx - hxy).value(), "predictability gap"));
  r.g_max = r.predictability_gap;
  r.info_set = std::move(info_set);
  return r;
}

/// Eff_q(X|Y) together with every fair-quote field. Only H(q) = 0 is
/// degenerate here; when H(X) = 0 but H(q) > 0 the plain efficiency is left
/// out of the report.
inline EfficiencyReport efficiency_with_quotes(const JointSystem& joint, const Distribution& quotes,
                                               InfoSetLabel info_set = InfoSetLabel::strong()) {
  const Distribution px = marginal_outcome(joint);
  if (quotes.labels() != px.labels()) {
    throw Error(ErrorKind::LabelMismatch, "quote labels " + detail::join_labels(quotes.labels()) +
                                              " differ from outcomes " + detail::join_labels(px.labels()));
  }
  double qsum = 0.0;
  for (double q : quotes.probs()) qsum += q;
  if (std::abs(qsum - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::QuoteSumNotOne, "quotes sum to " + std::to_string(qsum));
  }
  const Bits hx = entropy(px);
  const Bits hxy = conditional_entropy(joint);
  const Bits hq = cross_entropy(px, quotes);
  if (!(hq.value() > 0.0)) {
    throw Error(ErrorKind::DegenerateSystem, "H(q) = 0: certain outcome quoted at certainty, Eff_q is undefined");
  }

  EfficiencyReport r;
  r.h_x = hx;
  r.h_x_given_y = hxy;
  r.h_q = hq;
  if (hx.value() > 0.0) r.eff = detail::unit_ratio(hxy.value(), hx.value(), "efficiency");
  r.eff_q = detail::unit_ratio(hxy.value(), hq.value(), "quoted efficiency");
  r.predictability_gap = Bits(detail::clamp_nonnegative((hx - hxy).value(), "predictability gap"));
  r.g_max = r.predictability_gap;
  r.mispricing_gap = Bits(detail::clamp_nonnegative((hq - hx).value(), "mispricing gap"));
  r.g_max_q = Bits(detail::clamp_nonnegative((hq - hxy).value(), "growth under quotes"));
  r.info_set = std::move(info_set);
  return r;
}

/// One report per information set, in input order. All systems must share
/// the outcome marginal.
inline std::vector<EfficiencyReport> compare_info_sets(
    const std::vector<std::pair<InfoSetLabel, JointSystem>>& systems) {
  std::vector<EfficiencyReport> reports;
  if (systems.empty()) return reports;
  const Distribution reference = marginal_outcome(systems.front().second);
  for (const auto& [label, joint] : systems) {
    const Distribution px = marginal_outcome(joint);
    if (px.labels() != reference.labels()) {
      throw Error(ErrorKind::MarginalMismatch, "information set '" + label.to_string() + "' has outcomes " +
                                                   detail::join_labels(px.labels()));
    }
    for (std::size_t x = 0; x < px.size(); ++x) {
      if (std::abs(px[x] - reference[x]) > kSumTolerance) {
        throw Error(ErrorKind::MarginalMismatch, "information set '" + label.to_string() +
                                                     "' changes p(" + px.labels()[x] + ")");
      }
    }
    reports.push_back(efficiency(joint, label));
  }
  return reports;
}

}  // namespace infoeff
