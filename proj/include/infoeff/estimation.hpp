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

// Efficiency estimated from observed (signal, outcome) pairs.
//
// Sample files are CSV with a `signal,outcome` header and one record per
// line. Lines starting with '#' are comments; two comment directives fix the
// alphabets up front (otherwise they are the sorted observed labels):
//
//   # outcomes: h,t
//   # signals: up,down
//
// Quote sidecars are CSV with a `label,q` header.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoeff/efficiency.hpp"
#include "infoeff/error.hpp"
#include "infoeff/information.hpp"
#include "infoeff/probability.hpp"
#include "infoeff/random.hpp"

namespace infoeff::estimation {

struct Record {
  std::uint32_t signal;
  std::uint32_t outcome;
};

class SampleSet {
 public:
  SampleSet(std::vector<Label> outcome_labels, std::vector<Label> signal_labels, std::vector<Record> records)
      : outcomes_(std::move(outcome_labels)), signals_(std::move(signal_labels)), records_(std::move(records)) {
    infoeff::detail::validate_labels(outcomes_, "outcome");
    infoeff::detail::validate_labels(signals_, "signal");
    if (records_.empty()) throw Error(ErrorKind::EmptyInput, "sample set has no records");
    for (const auto& r : records_) {
      if (r.outcome >= outcomes_.size() || r.signal >= signals_.size()) {
        throw Error(ErrorKind::InvalidArgument, "record refers to a label outside the alphabets");
      }
    }
  }

  const std::vector<Label>& outcome_labels() const noexcept { return outcomes_; }
  const std::vector<Label>& signal_labels() const noexcept { return signals_; }
  const std::vector<Record>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  /// Cell counts, row-major by outcome.
  std::vector<std::uint64_t> counts() const {
    std::vector<std::uint64_t> c(outcomes_.size() * signals_.size(), 0);
    for (const auto& r : records_) ++c[r.outcome * signals_.size() + r.signal];
    return c;
  }

 private:
  std::vector<Label> outcomes_;
  std::vector<Label> signals_;
  std::vector<Record> records_;
};

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

// 1-based column where field `index` starts.
inline std::size_t field_column(const std::vector<std::string_view>& fields, std::size_t index) {
  std::size_t col = 1;
  for (std::size_t i = 0; i < index; ++i) col += fields[i].size() + 1;
  return col;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Reads lines, dropping a trailing '\r'. Returns false at end of input.
inline bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

inline std::optional<std::vector<Label>> parse_directive(std::string_view body, std::string_view key) {
  body = trim(body);
  if (!body.starts_with(key)) return std::nullopt;
  auto rest = trim(body.substr(key.size()));
  if (!rest.starts_with(':')) return std::nullopt;
  rest = trim(rest.substr(1));
  std::vector<Label> labels;
  for (auto f : split_commas(rest)) labels.emplace_back(trim(f));
  return labels;
}

}  // namespace detail

/// Parses a sample CSV stream.
inline SampleSet read_samples(std::istream& in) {
  std::optional<std::vector<Label>> declared_outcomes;
  std::optional<std::vector<Label>> declared_signals;
  std::optional<std::size_t> signal_col;
  std::optional<std::size_t> outcome_col;
  std::vector<std::pair<std::string, std::string>> raw;  // (signal, outcome)
  std::vector<std::size_t> raw_lines;

  std::string line;
  std::size_t lineno = 0;
  while (detail::next_line(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (detail::trim(view).empty()) continue;
    if (view.starts_with('#')) {
      const auto body = view.substr(1);
      for (auto [key, target] : {std::pair{std::string_view("outcomes"), &declared_outcomes},
                                 std::pair{std::string_view("signals"), &declared_signals}}) {
        if (auto labels = detail::parse_directive(body, key)) {
          if (!raw.empty()) throw ParseError(lineno, 1, "alphabet directive after the first record");
          if (*target) throw ParseError(lineno, 1, std::string(key) + " declared twice");
          try {
            infoeff::detail::validate_labels(*labels, key);
          } catch (const Error& e) {
            throw ParseError(lineno, 1, e.what());
          }
          *target = std::move(*labels);
        }
      }
      continue;
    }
    const auto fields = detail::split_commas(view);
    if (!signal_col) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name = detail::trim(fields[i]);
        const auto col = detail::field_column(fields, i);
        if (name != "signal" && name != "outcome") {
          throw ParseError(lineno, col, "unknown column '" + std::string(name) + "'");
        }
        auto& slot = name == "signal" ? signal_col : outcome_col;
        if (slot) throw ParseError(lineno, col, "column '" + std::string(name) + "' repeats");
        slot = i;
      }
      if (!signal_col || !outcome_col) {
        throw ParseError(lineno, 1, "header must name the columns signal and outcome");
      }
      continue;
    }
    if (fields.size() != 2) {
      const std::size_t col = fields.size() > 2 ? detail::field_column(fields, 2) - 1 : view.size() + 1;
      throw ParseError(lineno, col, "expected 2 fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < 2; ++i) {
      if (fields[i].empty()) throw ParseError(lineno, detail::field_column(fields, i), "empty label");
    }
    raw.emplace_back(std::string(fields[*signal_col]), std::string(fields[*outcome_col]));
    raw_lines.push_back(lineno);
  }

  if (!signal_col) throw Error(ErrorKind::EmptyInput, "line " + std::to_string(lineno + 1) + ": no header found");
  if (raw.empty()) {
    throw Error(ErrorKind::EmptyInput, "line " + std::to_string(lineno + 1) + ": no records after the header");
  }

  auto alphabet = [&](const std::optional<std::vector<Label>>& declared, bool outcome) {
    if (declared) return *declared;
    std::vector<Label> seen;
    for (const auto& r : raw) seen.push_back(outcome ? r.second : r.first);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return seen;
  };
  auto outcomes = alphabet(declared_outcomes, true);
  auto signals = alphabet(declared_signals, false);

  std::map<std::string, std::uint32_t, std::less<>> outcome_index;
  std::map<std::string, std::uint32_t, std::less<>> signal_index;
  for (std::uint32_t i = 0; i < outcomes.size(); ++i) outcome_index.emplace(outcomes[i], i);
  for (std::uint32_t i = 0; i < signals.size(); ++i) signal_index.emplace(signals[i], i);

  std::vector<Record> records;
  records.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto s = signal_index.find(raw[i].first);
    auto o = outcome_index.find(raw[i].second);
    // Column of each label in the original line.
    const std::size_t first_len = *signal_col == 0 ? raw[i].first.size() : raw[i].second.size();
    const std::size_t signal_column = *signal_col == 0 ? 1 : first_len + 2;
    const std::size_t outcome_column = *outcome_col == 0 ? 1 : first_len + 2;
    if (s == signal_index.end()) {
      throw ParseError(raw_lines[i], signal_column, "signal '" + raw[i].first + "' is not a declared signal");
    }
    if (o == outcome_index.end()) {
      throw ParseError(raw_lines[i], outcome_column, "outcome '" + raw[i].second + "' is not a declared outcome");
    }
    records.push_back({s->second, o->second});
  }
  return SampleSet(std::move(outcomes), std::move(signals), std::move(records));
}

/// Writes samples in the format read_samples accepts, with directives.
inline void write_samples(std::ostream& out, const SampleSet& samples) {
  auto join = [](const std::vector<Label>& labels) {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
    return s;
  };
  out << "# outcomes: " << join(samples.outcome_labels()) << "\n";
  out << "# signals: " << join(samples.signal_labels()) << "\n";
  out << "signal,outcome\n";
  for (const auto& r : samples.records()) {
    out << samples.signal_labels()[r.signal] << "," << samples.outcome_labels()[r.outcome] << "\n";
  }
}

/// Parses a `label,q` quote sidecar. The values must sum to one.
inline Distribution read_quotes(std::istream& in) {
  std::vector<Label> labels;
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (detail::next_line(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (detail::trim(view).empty() || view.starts_with('#')) continue;
    const auto fields = detail::split_commas(view);
    if (!header) {
      if (fields.size() != 2 || detail::trim(fields[0]) != "label" || detail::trim(fields[1]) != "q") {
        throw ParseError(lineno, 1, "quote file header must be 'label,q'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError(lineno, 1, "expected 2 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(lineno, 1, "empty label");
    const auto text = detail::trim(fields[1]);
    double q = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError(lineno, detail::field_column(fields, 1), "'" + std::string(text) + "' is not a number");
    }
    labels.emplace_back(fields[0]);
    values.push_back(q);
  }
  if (!header) throw Error(ErrorKind::EmptyInput, "line " + std::to_string(lineno + 1) + ": no header found");
  if (labels.empty()) throw Error(ErrorKind::EmptyInput, "line " + std::to_string(lineno + 1) + ": no quotes");
  return make_quotes(std::move(labels), std::move(values));
}

/// Reorders quotes to follow `outcomes`. Every outcome needs a quote and
/// every quote must name an outcome.
inline Distribution align_quotes(const Distribution& quotes, const std::vector<Label>& outcomes) {
  if (quotes.size() != outcomes.size()) {
    throw Error(ErrorKind::LabelMismatch, "quotes cover " + infoeff::detail::join_labels(quotes.labels()) +
                                              " but the outcomes are " + infoeff::detail::join_labels(outcomes));
  }
  std::vector<double> q;
  for (const auto& label : outcomes) q.push_back(quotes.prob(label));
  return make_quotes(outcomes, std::move(q));
}

/// Joint from cell counts with additive smoothing:
/// (count + s) / (N + s |X| |Y|).
inline JointSystem joint_from_counts(const std::vector<Label>& outcomes, const std::vector<Label>& signals,
                                     const std::vector<std::uint64_t>& counts, double smoothing) {
  if (!(smoothing >= 0.0) || std::isinf(smoothing)) {
    throw Error(ErrorKind::InvalidArgument, "smoothing must be a finite nonnegative number");
  }
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double denom = total + smoothing * static_cast<double>(counts.size());
  if (!(denom > 0.0)) throw Error(ErrorKind::EmptyInput, "no counts and no smoothing");
  std::vector<double> cells(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) cells[i] = (static_cast<double>(counts[i]) + smoothing) / denom;
  return make_joint(outcomes, signals, std::move(cells));
}

inline JointSystem estimate_joint(const SampleSet& samples, double smoothing) {
  return joint_from_counts(samples.outcome_labels(), samples.signal_labels(), samples.counts(), smoothing);
}

/// Draws n records from a prior and channel; for synthetic studies.
inline SampleSet synthesize(const Distribution& prior, const Channel& channel, std::size_t n, std::uint64_t seed,
                            std::uint64_t stream = 0) {
  if (prior.labels() != channel.input_labels()) {
    throw Error(ErrorKind::LabelMismatch, "prior labels differ from channel inputs");
  }
  auto rng = Xoshiro256::stream(seed, stream);
  const auto prior_cdf = cumulative_of(prior.probs());
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < prior.size(); ++x) rows.push_back(cumulative_of(channel.row(x).probs()));
  std::vector<Record> records(n);
  for (auto& r : records) {
    const auto x = sample_cumulative(rng, prior_cdf);
    const auto y = sample_cumulative(rng, rows[x]);
    r = {static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x)};
  }
  return SampleSet(prior.labels(), channel.output_labels(), std::move(records));
}

inline constexpr std::uint64_t kDefaultSeed = 20140101;
inline constexpr std::size_t kMinResamples = 100;

struct EstimateOptions {
  double smoothing = 0.5;
  std::size_t resamples = 1000;
  std::uint64_t seed = kDefaultSeed;
  double confidence = 0.95;
  InfoSetLabel info_set = InfoSetLabel::custom("signal");
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct EstimateReport {
  EfficiencyReport point;
  Interval eff_ci;
  std::optional<Interval> eff_q_ci;
  std::size_t n_samples = 0;
  double smoothing = 0.0;
  std::size_t resamples = 0;
  std::uint64_t seed = 0;
  /// Resamples whose outcome marginal had zero entropy; left out of the CI.
  std::size_t degenerate_resamples = 0;
  std::optional<std::string> warning;
};

namespace detail {

// Linear interpolation between order statistics (Hyndman-Fan type 7).
inline double quantile(const std::vector<double>& sorted, double level) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * level;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline Interval percentile_interval(std::vector<double> values, double confidence, double point) {
  std::sort(values.begin(), values.end());
  const double tail = (1.0 - confidence) / 2.0;
  Interval ci{quantile(values, tail), quantile(values, 1.0 - tail)};
  // The percentile interval of a biased statistic can miss its own point
  // estimate; widen so the point is always inside.
  ci.low = std::min(ci.low, point);
  ci.high = std::max(ci.high, point);
  return ci;
}

}  // namespace detail

/// Plug-in efficiency with a percentile bootstrap interval. Each resample
/// redraws N records with replacement, realized as multinomial cell counts
/// on stream `b` of the seed.
inline EstimateReport estimate_efficiency(const SampleSet& samples, const EstimateOptions& options,
                                          const std::optional<Distribution>& quotes = std::nullopt) {
  if (options.resamples < kMinResamples) {
    throw Error(ErrorKind::InvalidArgument, "resamples " + std::to_string(options.resamples) +
                                                " below the minimum of " + std::to_string(kMinResamples));
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "confidence level must lie in (0,1)");
  }
  std::optional<Distribution> aligned;
  if (quotes) aligned = align_quotes(*quotes, samples.outcome_labels());

  const auto counts = samples.counts();
  const auto joint = joint_from_counts(samples.outcome_labels(), samples.signal_labels(), counts, options.smoothing);
  if (!(entropy(marginal_outcome(joint)).value() > 0.0)) {
    throw Error(ErrorKind::DegenerateSystem, "estimated outcome distribution has zero entropy");
  }

  EstimateReport report;
  report.point = aligned ? efficiency_with_quotes(joint, *aligned, options.info_set)
                         : efficiency(joint, options.info_set);
  report.n_samples = samples.size();
  report.smoothing = options.smoothing;
  report.resamples = options.resamples;
  report.seed = options.seed;
  const std::size_t cells = counts.size();
  if (samples.size() < 10 * cells) {
    report.warning = "small sample: " + std::to_string(samples.size()) + " records for " + std::to_string(cells) +
                     " cells; plug-in entropies are biased low below " + std::to_string(10 * cells) + " records";
  }

  const std::vector<double> weights(counts.begin(), counts.end());
  std::vector<double> effs;
  std::vector<double> effs_q;
  effs.reserve(options.resamples);
  for (std::size_t b = 0; b < options.resamples; ++b) {
    auto rng = Xoshiro256::stream(options.seed, b);
    const auto resampled = sample_multinomial(rng, samples.size(), weights);
    const auto j = joint_from_counts(samples.outcome_labels(), samples.signal_labels(), resampled, options.smoothing);
    const double hx = entropy(marginal_outcome(j)).value();
    if (!(hx > 0.0)) {
      ++report.degenerate_resamples;
      continue;
    }
    if (aligned) {
      const auto r = efficiency_with_quotes(j, *aligned);
      effs.push_back(*r.eff);
      effs_q.push_back(*r.eff_q);
    } else {
      effs.push_back(*efficiency(j).eff);
    }
  }
  if (effs.empty()) throw Error(ErrorKind::DegenerateSystem, "every bootstrap resample was degenerate");
  report.eff_ci = detail::percentile_interval(std::move(effs), options.confidence, *report.point.eff);
  if (aligned) report.eff_q_ci = detail::percentile_interval(std::move(effs_q), options.confidence, *report.point.eff_q);
  return report;
}

}  // namespace infoeff::estimation
