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

// Finite discrete distributions, channels p(y|x) and joint systems p(x,y).
// All types are immutable once built; every factory validates its input.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "infoeff/error.hpp"

namespace infoeff {

using Label = std::string;

/// Allowed deviation of a probability vector's sum from one.
inline constexpr double kSumTolerance = 1e-9;

namespace detail {

inline void validate_labels(std::span<const Label> labels, std::string_view what) {
  if (labels.empty()) {
    throw Error(ErrorKind::EmptyAlphabet, std::string(what) + " alphabet is empty");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      throw Error(ErrorKind::InvalidArgument, std::string(what) + " label is empty");
    }
    if (!seen.insert(label).second) {
      throw Error(ErrorKind::DuplicateLabel, std::string(what) + " label '" + label + "' repeats");
    }
  }
}

inline void validate_weights(std::span<const double> weights) {
  for (double w : weights) {
    if (std::isnan(w)) throw Error(ErrorKind::InvalidArgument, "weight is NaN");
    if (w < 0.0) throw Error(ErrorKind::NegativeWeight, "weight " + std::to_string(w) + " is negative");
    if (std::isinf(w)) throw Error(ErrorKind::InvalidArgument, "weight is infinite");
  }
}

inline std::optional<std::size_t> find_label(std::span<const Label> labels, std::string_view label) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

inline std::string join_labels(std::span<const Label> labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ",";
    out += labels[i];
  }
  return out + "]";
}

struct UncheckedAccess;

}  // namespace detail

/// Probability vector over an ordered outcome alphabet.
class Distribution {
 public:
  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    return detail::find_label(labels_, label);
  }

  double prob(std::string_view label) const {
    auto i = index_of(label);
    if (!i) throw Error(ErrorKind::LabelMismatch, "unknown label '" + std::string(label) + "'");
    return probs_[*i];
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(std::vector<Label> labels, std::vector<double> probs)
      : labels_(std::move(labels)), probs_(std::move(probs)) {}

  friend Distribution make_distribution(std::vector<Label>, std::vector<double>);
  friend Distribution normalize(std::vector<Label>, std::vector<double>);
  friend class Channel;
  friend struct detail::UncheckedAccess;

  std::vector<Label> labels_;
  std::vector<double> probs_;
};

/// Builds a distribution from weights that already sum to one. Nothing is
/// rescaled: a vector off by more than kSumTolerance is rejected.
inline Distribution make_distribution(std::vector<Label> labels, std::vector<double> weights) {
  detail::validate_labels(labels, "outcome");
  if (weights.size() != labels.size()) {
    throw Error(ErrorKind::InvalidArgument, "got " + std::to_string(weights.size()) +
                                                " weights for " + std::to_string(labels.size()) + " labels");
  }
  detail::validate_weights(weights);
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::SumNotOne, "weights sum to " + std::to_string(sum));
  }
  return Distribution(std::move(labels), std::move(weights));
}

/// Rescales nonnegative weights to sum to one. Weights whose sum is already
/// one up to accumulated rounding are returned untouched, which makes the
/// operation an exact fixed point on its own output.
inline Distribution normalize(std::vector<Label> labels, std::vector<double> weights) {
  detail::validate_labels(labels, "outcome");
  if (weights.size() != labels.size()) {
    throw Error(ErrorKind::InvalidArgument, "got " + std::to_string(weights.size()) +
                                                " weights for " + std::to_string(labels.size()) + " labels");
  }
  detail::validate_weights(weights);
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum == 0.0) throw Error(ErrorKind::AllZero, "all weights are zero");
  const double rounding = 4.0 * static_cast<double>(weights.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(sum - 1.0) > rounding) {
    for (double& w : weights) w /= sum;
  }
  return Distribution(std::move(labels), std::move(weights));
}

namespace detail {

// Construction without validation, for results derived from an already
// validated object (marginals, posteriors).
struct UncheckedAccess {
  static Distribution make(std::vector<Label> labels, std::vector<double> probs) {
    return Distribution(std::move(labels), std::move(probs));
  }
};

}  // namespace detail

/// Conditional distribution p(y|x), one row per input label.
class Channel {
 public:
  const std::vector<Label>& input_labels() const noexcept { return inputs_; }
  const std::vector<Label>& output_labels() const noexcept { return outputs_; }
  std::size_t inputs() const noexcept { return inputs_.size(); }
  std::size_t outputs() const noexcept { return outputs_.size(); }

  /// p(y | x) by index.
  double operator()(std::size_t x, std::size_t y) const { return cells_.at(x * outputs_.size() + y); }

  Distribution row(std::size_t x) const {
    auto begin = cells_.begin() + static_cast<std::ptrdiff_t>(x * outputs_.size());
    return Distribution(outputs_, std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(outputs_.size())));
  }

  friend Channel make_channel(std::vector<Label>, std::vector<Label>, const std::vector<std::vector<double>>&);

 private:
  Channel(std::vector<Label> inputs, std::vector<Label> outputs, std::vector<double> cells)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)), cells_(std::move(cells)) {}

  std::vector<Label> inputs_;
  std::vector<Label> outputs_;
  std::vector<double> cells_;
};

inline Channel make_channel(std::vector<Label> inputs, std::vector<Label> outputs,
                            const std::vector<std::vector<double>>& rows) {
  detail::validate_labels(inputs, "channel input");
  detail::validate_labels(outputs, "channel output");
  if (rows.size() != inputs.size()) {
    throw Error(ErrorKind::InvalidArgument, "channel has " + std::to_string(rows.size()) + " rows for " +
                                                std::to_string(inputs.size()) + " inputs");
  }
  std::vector<double> cells;
  cells.reserve(inputs.size() * outputs.size());
  for (const auto& row : rows) {
    // Each row goes through the distribution checks.
    auto validated = make_distribution(outputs, row);
    cells.insert(cells.end(), validated.probs().begin(), validated.probs().end());
  }
  return Channel(std::move(inputs), std::move(outputs), std::move(cells));
}

/// Signal alphabet equal to the outcome alphabet; the signal names the true
/// outcome with probability `accuracy` and is otherwise spread evenly over
/// the remaining labels.
inline Channel symmetric_channel(const std::vector<Label>& labels, double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw Error(ErrorKind::DomainViolation, "accuracy " + std::to_string(accuracy) + " outside [0,1]");
  }
  if (labels.size() < 2) throw Error(ErrorKind::UnsupportedAlphabet, "symmetric channel needs two or more labels");
  const double miss = (1.0 - accuracy) / static_cast<double>(labels.size() - 1);
  std::vector<std::vector<double>> rows(labels.size(), std::vector<double>(labels.size(), miss));
  for (std::size_t i = 0; i < labels.size(); ++i) rows[i][i] = accuracy;
  return make_channel(labels, labels, rows);
}

inline Channel identity_channel(const std::vector<Label>& labels) { return symmetric_channel(labels, 1.0); }

/// Every input emits the same signal distribution: the signal carries no
/// information about the outcome.
inline Channel constant_channel(const std::vector<Label>& inputs, const Distribution& signal) {
  std::vector<std::vector<double>> rows(inputs.size(),
                                        std::vector<double>(signal.probs().begin(), signal.probs().end()));
  return make_channel(inputs, signal.labels(), rows);
}

/// Garbling: X -> Y through `first`, then Y -> Z through `second`.
inline Channel compose(const Channel& first, const Channel& second) {
  if (first.output_labels() != second.input_labels()) {
    throw Error(ErrorKind::LabelMismatch, "composed channel alphabets differ: " +
                                              detail::join_labels(first.output_labels()) + " vs " +
                                              detail::join_labels(second.input_labels()));
  }
  std::vector<std::vector<double>> rows(first.inputs(), std::vector<double>(second.outputs(), 0.0));
  for (std::size_t x = 0; x < first.inputs(); ++x) {
    for (std::size_t z = 0; z < second.outputs(); ++z) {
      double p = 0.0;
      for (std::size_t y = 0; y < first.outputs(); ++y) p += first(x, y) * second(y, z);
      rows[x][z] = p;
    }
  }
  return make_channel(first.input_labels(), second.output_labels(), rows);
}

/// Two conditionally independent observations of the same outcome, reported
/// together as the pair signal "y&z".
inline Channel combine(const Channel& a, const Channel& b) {
  if (a.input_labels() != b.input_labels()) {
    throw Error(ErrorKind::LabelMismatch, "combined channels observe different outcomes");
  }
  std::vector<Label> outputs;
  for (const auto& y : a.output_labels()) {
    for (const auto& z : b.output_labels()) outputs.push_back(y + "&" + z);
  }
  std::vector<std::vector<double>> rows(a.inputs(), std::vector<double>(outputs.size(), 0.0));
  for (std::size_t x = 0; x < a.inputs(); ++x) {
    for (std::size_t y = 0; y < a.outputs(); ++y) {
      for (std::size_t z = 0; z < b.outputs(); ++z) rows[x][y * b.outputs() + z] = a(x, y) * b(x, z);
    }
  }
  return make_channel(a.input_labels(), std::move(outputs), rows);
}

/// Joint distribution p(x, y), stored row-major by outcome.
class JointSystem {
 public:
  const std::vector<Label>& outcome_labels() const noexcept { return outcomes_; }
  const std::vector<Label>& signal_labels() const noexcept { return signals_; }
  std::size_t outcomes() const noexcept { return outcomes_.size(); }
  std::size_t signals() const noexcept { return signals_.size(); }
  std::span<const double> cells() const noexcept { return cells_; }

  double operator()(std::size_t x, std::size_t y) const { return cells_.at(x * signals_.size() + y); }

  friend JointSystem make_joint(std::vector<Label>, std::vector<Label>, std::vector<double>);

 private:
  JointSystem(std::vector<Label> outcomes, std::vector<Label> signals, std::vector<double> cells)
      : outcomes_(std::move(outcomes)), signals_(std::move(signals)), cells_(std::move(cells)) {}

  std::vector<Label> outcomes_;
  std::vector<Label> signals_;
  std::vector<double> cells_;
};

/// `cells` is row-major: cells[x * |signals| + y] = p(x, y).
inline JointSystem make_joint(std::vector<Label> outcomes, std::vector<Label> signals, std::vector<double> cells) {
  detail::validate_labels(outcomes, "outcome");
  detail::validate_labels(signals, "signal");
  if (cells.size() != outcomes.size() * signals.size()) {
    throw Error(ErrorKind::InvalidArgument, "joint has " + std::to_string(cells.size()) + " cells, expected " +
                                                std::to_string(outcomes.size() * signals.size()));
  }
  detail::validate_weights(cells);
  double sum = std::accumulate(cells.begin(), cells.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::SumNotOne, "joint cells sum to " + std::to_string(sum));
  }
  return JointSystem(std::move(outcomes), std::move(signals), std::move(cells));
}

inline JointSystem make_joint(std::vector<Label> outcomes, std::vector<Label> signals,
                              const std::vector<std::vector<double>>& rows) {
  std::vector<double> cells;
  for (const auto& row : rows) {
    if (row.size() != signals.size()) {
      throw Error(ErrorKind::InvalidArgument, "joint row width differs from signal count");
    }
    cells.insert(cells.end(), row.begin(), row.end());
  }
  if (rows.size() != outcomes.size()) {
    throw Error(ErrorKind::InvalidArgument, "joint row count differs from outcome count");
  }
  return make_joint(std::move(outcomes), std::move(signals), std::move(cells));
}

inline JointSystem joint_from_prior_channel(const Distribution& prior, const Channel& channel) {
  if (prior.labels() != channel.input_labels()) {
    throw Error(ErrorKind::LabelMismatch, "prior labels " + detail::join_labels(prior.labels()) +
                                              " differ from channel inputs " +
                                              detail::join_labels(channel.input_labels()));
  }
  std::vector<double> cells(prior.size() * channel.outputs());
  for (std::size_t x = 0; x < prior.size(); ++x) {
    for (std::size_t y = 0; y < channel.outputs(); ++y) cells[x * channel.outputs() + y] = prior[x] * channel(x, y);
  }
  return make_joint(prior.labels(), channel.output_labels(), std::move(cells));
}

/// p(y) = sum over x of p(x, y).
inline Distribution marginal_signal(const JointSystem& joint) {
  std::vector<double> p(joint.signals(), 0.0);
  for (std::size_t x = 0; x < joint.outcomes(); ++x) {
    for (std::size_t y = 0; y < joint.signals(); ++y) p[y] += joint(x, y);
  }
  return detail::UncheckedAccess::make(joint.signal_labels(), std::move(p));
}

/// p(x) = sum over y of p(x, y).
inline Distribution marginal_outcome(const JointSystem& joint) {
  std::vector<double> p(joint.outcomes(), 0.0);
  for (std::size_t x = 0; x < joint.outcomes(); ++x) {
    for (std::size_t y = 0; y < joint.signals(); ++y) p[x] += joint(x, y);
  }
  return detail::UncheckedAccess::make(joint.outcome_labels(), std::move(p));
}

/// General Bayes rule p(x|y) = p(x) p(y|x) / sum_x' p(x') p(y|x').
inline Distribution bayes_posterior(const Distribution& prior, const Channel& channel, std::size_t signal) {
  if (prior.labels() != channel.input_labels()) {
    throw Error(ErrorKind::LabelMismatch, "prior labels differ from channel inputs");
  }
  if (signal >= channel.outputs()) {
    throw Error(ErrorKind::LabelMismatch, "signal index " + std::to_string(signal) + " out of range");
  }
  std::vector<double> post(prior.size());
  double evidence = 0.0;
  for (std::size_t x = 0; x < prior.size(); ++x) {
    post[x] = prior[x] * channel(x, signal);
    evidence += post[x];
  }
  if (!(evidence > 0.0)) {
    throw Error(ErrorKind::ZeroProbabilitySignal,
                "signal '" + channel.output_labels()[signal] + "' has zero marginal probability");
  }
  for (double& p : post) p /= evidence;
  return detail::UncheckedAccess::make(prior.labels(), std::move(post));
}

inline Distribution bayes_posterior(const Distribution& prior, const Channel& channel, std::string_view signal) {
  auto y = detail::find_label(channel.output_labels(), signal);
  if (!y) throw Error(ErrorKind::LabelMismatch, "unknown signal '" + std::string(signal) + "'");
  return bayes_posterior(prior, channel, *y);
}

}  // namespace infoeff
