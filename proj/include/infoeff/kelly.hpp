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

// Repeated betting on a quoted system. Each round an outcome x and a signal
// y are drawn, the bettor splits its whole wealth over the outcomes according
// to allocation(y), and the stake on x pays 1/q(x). Wealth is kept as log2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>
#include <utility>
#include <vector>

#include "infoeff/efficiency.hpp"
#include "infoeff/error.hpp"
#include "infoeff/information.hpp"
#include "infoeff/probability.hpp"
#include "infoeff/random.hpp"

namespace infoeff::kelly {

/// Outcome prior, signal channel and quotes of a betting market.
class Market {
 public:
  Market(Distribution prior, Channel channel, Distribution quotes)
      : prior_(std::move(prior)), channel_(std::move(channel)), quotes_(std::move(quotes)) {
    if (prior_.labels() != channel_.input_labels() || quotes_.labels() != prior_.labels()) {
      throw Error(ErrorKind::LabelMismatch, "prior, channel and quotes must share the outcome alphabet");
    }
    double qsum = 0.0;
    for (double q : quotes_.probs()) qsum += q;
    if (std::abs(qsum - 1.0) > kSumTolerance) {
      throw Error(ErrorKind::QuoteSumNotOne, "quotes sum to " + std::to_string(qsum));
    }
    // Rejects outcomes that can occur but are quoted at zero.
    (void)cross_entropy(prior_, quotes_);
  }

  /// Fair quotes, q = p.
  Market(Distribution prior, Channel channel) : Market(prior, std::move(channel), prior) {}

  const Distribution& prior() const noexcept { return prior_; }
  const Channel& channel() const noexcept { return channel_; }
  const Distribution& quotes() const noexcept { return quotes_; }
  JointSystem joint() const { return joint_from_prior_channel(prior_, channel_); }

 private:
  Distribution prior_;
  Channel channel_;
  Distribution quotes_;
};

/// Per-signal split of the whole wealth over the outcomes.
class BettingStrategy {
 public:
  BettingStrategy(std::vector<Label> signals, std::vector<Distribution> allocation)
      : signals_(std::move(signals)), allocation_(std::move(allocation)) {
    if (signals_.size() != allocation_.size()) {
      throw Error(ErrorKind::InvalidArgument, "one allocation per signal is required");
    }
    for (const auto& a : allocation_) {
      if (a.labels() != allocation_.front().labels()) {
        throw Error(ErrorKind::LabelMismatch, "allocations cover different outcomes");
      }
    }
  }

  const std::vector<Label>& signals() const noexcept { return signals_; }
  const Distribution& allocation(std::size_t signal) const { return allocation_.at(signal); }

 private:
  std::vector<Label> signals_;
  std::vector<Distribution> allocation_;
};

/// Proportional betting on the posterior p(x|y).
inline BettingStrategy kelly_strategy(const Distribution& prior, const Channel& channel) {
  std::vector<Distribution> allocation;
  allocation.reserve(channel.outputs());
  for (std::size_t y = 0; y < channel.outputs(); ++y) allocation.push_back(bayes_posterior(prior, channel, y));
  return BettingStrategy(channel.output_labels(), std::move(allocation));
}

namespace detail {

inline void check_alignment(const Market& market, const BettingStrategy& strategy) {
  if (strategy.signals() != market.channel().output_labels()) {
    throw Error(ErrorKind::LabelMismatch, "strategy signals differ from the channel's");
  }
  if (strategy.allocation(0).labels() != market.prior().labels()) {
    throw Error(ErrorKind::LabelMismatch, "strategy outcomes differ from the market's");
  }
}

// log2 wealth factor for outcome x under signal y; -inf when nothing is
// staked on x.
inline std::vector<double> growth_table(const Market& market, const BettingStrategy& strategy) {
  const std::size_t nx = market.prior().size();
  const std::size_t ny = market.channel().outputs();
  std::vector<double> table(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    const double payout = -std::log2(market.quotes()[x]);
    for (std::size_t y = 0; y < ny; ++y) {
      const double stake = strategy.allocation(y)[x];
      table[x * ny + y] = stake > 0.0 ? std::log2(stake) + payout : -std::numeric_limits<double>::infinity();
    }
  }
  return table;
}

}  // namespace detail

/// Exact expected log2 growth per round, sum over (x, y) of
/// p(x, y) log2(allocation(y)(x) / q(x)).
inline double expected_growth(const Market& market, const BettingStrategy& strategy) {
  detail::check_alignment(market, strategy);
  const auto joint = market.joint();
  const auto table = detail::growth_table(market, strategy);
  double g = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = joint.cells()[i];
    if (p > 0.0) g += p * table[i];
  }
  return g;
}

struct TrajectoryPoint {
  std::uint64_t round;
  double log2_wealth;
};

struct SimulationResult {
  std::uint64_t rounds = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double final_log2_wealth = 0.0;  // log2(V_n / V_0)
  double mean_growth = 0.0;        // bits per round
  /// Set when a round hit an outcome with zero stake; wealth is then zero
  /// (log2 = -inf) and the run stops.
  std::optional<std::uint64_t> bankrupt_round;
  std::vector<TrajectoryPoint> trajectory;
};

/// One betting run. Identical arguments give an identical result.
/// `trajectory_stride` > 0 records log2 wealth at round 0, every stride
/// rounds and at the last round.
inline SimulationResult simulate(const Market& market, const BettingStrategy& strategy, std::uint64_t rounds,
                                 std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t trajectory_stride = 0) {
  if (rounds < 1) throw Error(ErrorKind::InvalidArgument, "a simulation needs at least one round");
  detail::check_alignment(market, strategy);
  const auto table = detail::growth_table(market, strategy);
  const auto prior_cdf = cumulative_of(market.prior().probs());
  const std::size_t nx = market.prior().size();
  const std::size_t ny = market.channel().outputs();
  std::vector<std::vector<double>> channel_cdf(nx);
  for (std::size_t x = 0; x < nx; ++x) channel_cdf[x] = cumulative_of(market.channel().row(x).probs());

  SimulationResult result;
  result.rounds = rounds;
  result.seed = seed;
  result.stream = stream;
  if (trajectory_stride > 0) result.trajectory.push_back({0, 0.0});

  auto rng = Xoshiro256::stream(seed, stream);
  double log2_wealth = 0.0;
  for (std::uint64_t n = 1; n <= rounds; ++n) {
    const std::size_t x = sample_cumulative(rng, prior_cdf);
    const std::size_t y = sample_cumulative(rng, channel_cdf[x]);
    log2_wealth += table[x * ny + y];
    if (std::isinf(log2_wealth)) {
      result.bankrupt_round = n;
      if (trajectory_stride > 0) result.trajectory.push_back({n, log2_wealth});
      break;
    }
    if (trajectory_stride > 0 && (n % trajectory_stride == 0 || n == rounds)) {
      result.trajectory.push_back({n, log2_wealth});
    }
  }
  result.final_log2_wealth = log2_wealth;
  result.mean_growth = log2_wealth / static_cast<double>(rounds);
  return result;
}

/// `runs` independent runs on streams 0..runs-1 of `seed`, ordered by run
/// index whatever the thread count. Only run 0 keeps a trajectory.
inline std::vector<SimulationResult> simulate_runs(const Market& market, const BettingStrategy& strategy,
                                                   std::uint64_t rounds, std::uint64_t seed, std::size_t runs,
                                                   std::uint64_t trajectory_stride = 0, unsigned threads = 0) {
  if (runs < 1) throw Error(ErrorKind::InvalidArgument, "at least one run is required");
  std::vector<SimulationResult> results(runs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));
  auto work = [&](unsigned t) {
    for (std::size_t r = t; r < runs; r += threads) {
      results[r] = simulate(market, strategy, rounds, seed, r, r == 0 ? trajectory_stride : 0);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return results;
}

struct GridSearchResult {
  BettingStrategy strategy;
  double expected_growth;
};

/// Brute-force optimum over fixed per-signal allocations (a, 1 - a) with a
/// on the grid {0, 1/resolution, ..., 1}. Binary outcomes only. The
/// objective separates over signals, so each signal is searched on its own.
/// Signals that never occur get (1/2, 1/2).
inline GridSearchResult grid_search_optimal(const Market& market, std::size_t resolution) {
  if (market.prior().size() != 2) {
    throw Error(ErrorKind::UnsupportedAlphabet, "grid search supports two outcomes, got " +
                                                    std::to_string(market.prior().size()));
  }
  if (resolution < 100) throw Error(ErrorKind::InvalidArgument, "grid resolution must be at least 100");

  const auto joint = market.joint();
  const auto& outcomes = market.prior().labels();
  const double log_q0 = std::log2(market.quotes()[0]);
  const double log_q1 = std::log2(market.quotes()[1]);
  std::vector<Distribution> allocation;
  double total = 0.0;
  for (std::size_t y = 0; y < joint.signals(); ++y) {
    const double p0 = joint(0, y);
    const double p1 = joint(1, y);
    if (!(p0 + p1 > 0.0)) {
      allocation.push_back(make_distribution(outcomes, {0.5, 0.5}));
      continue;
    }
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i <= resolution; ++i) {
      const double a = static_cast<double>(i) / static_cast<double>(resolution);
      const double b = static_cast<double>(resolution - i) / static_cast<double>(resolution);
      if ((p0 > 0.0 && a == 0.0) || (p1 > 0.0 && b == 0.0)) continue;
      double g = 0.0;
      if (p0 > 0.0) g += p0 * (std::log2(a) - log_q0);
      if (p1 > 0.0) g += p1 * (std::log2(b) - log_q1);
      if (g > best) {
        best = g;
        best_i = i;
      }
    }
    const double a = static_cast<double>(best_i) / static_cast<double>(resolution);
    allocation.push_back(make_distribution(outcomes, {a, static_cast<double>(resolution - best_i) /
                                                             static_cast<double>(resolution)}));
    total += best;
  }
  return GridSearchResult{BettingStrategy(joint.signal_labels(), std::move(allocation)), total};
}

}  // namespace infoeff::kelly
