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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "infoeff/random.hpp"

namespace infoeff {
namespace {

TEST(Xoshiro256, SameSeedSameSequence) {
  Xoshiro256 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a();
    ASSERT_EQ(va, b());
    differs = differs || va != c();
  }
  EXPECT_TRUE(differs);
}

TEST(Xoshiro256, StreamsAreDistinct) {
  auto s0 = Xoshiro256::stream(7, 0);
  auto s1 = Xoshiro256::stream(7, 1);
  auto again = Xoshiro256::stream(7, 1);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    const auto v1 = s1();
    ASSERT_EQ(v1, again());
    if (s0() == v1) ++equal;
  }
  EXPECT_EQ(equal, 0);
}

TEST(Xoshiro256, UniformAndBelowStayInRange) {
  Xoshiro256 rng(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    ASSERT_LT(rng.below(7), 7u);
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(SampleCumulative, NeverPicksZeroMassOutcomes) {
  const std::vector<double> probs{0.0, 0.3, 0.0, 0.7, 0.0};
  const auto cdf = cumulative_of(probs);
  Xoshiro256 rng(3);
  std::vector<int> hits(probs.size(), 0);
  for (int i = 0; i < 100000; ++i) ++hits[sample_cumulative(rng, cdf)];
  EXPECT_EQ(hits[0], 0);
  EXPECT_EQ(hits[2], 0);
  EXPECT_EQ(hits[4], 0);
  EXPECT_NEAR(hits[1] / 100000.0, 0.3, 0.01);
}

void check_binomial_moments(std::uint64_t n, double p, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  const int draws = 20000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto k = sample_binomial(rng, n, p);
    ASSERT_LE(k, n);
    sum += static_cast<double>(k);
    sq += static_cast<double>(k) * static_cast<double>(k);
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  const double true_mean = static_cast<double>(n) * p;
  const double true_var = true_mean * (1.0 - p);
  EXPECT_NEAR(mean, true_mean, 5.0 * std::sqrt(true_var / draws) + 1e-12) << "n=" << n << " p=" << p;
  EXPECT_NEAR(var, true_var, 0.06 * true_var + 1e-12) << "n=" << n << " p=" << p;
}

TEST(SampleBinomial, MomentsMatchOnBothBranches) {
  check_binomial_moments(20, 0.3, 1);        // inversion
  check_binomial_moments(1000, 0.004, 2);    // inversion, small np
  check_binomial_moments(1000, 0.3, 3);      // rejection
  check_binomial_moments(100000, 0.45, 4);   // rejection, large n
  check_binomial_moments(5000, 0.93, 5);     // symmetry
}

TEST(SampleBinomial, EdgeCases) {
  Xoshiro256 rng(9);
  EXPECT_EQ(sample_binomial(rng, 0, 0.5), 0u);
  EXPECT_EQ(sample_binomial(rng, 50, 0.0), 0u);
  EXPECT_EQ(sample_binomial(rng, 50, 1.0), 50u);
}

TEST(SampleMultinomial, CountsSumAndMatchMeans) {
  const std::vector<double> w{0.45, 0.05, 0.0, 0.5};
  Xoshiro256 rng(11);
  std::vector<double> totals(w.size(), 0.0);
  const int draws = 2000;
  const std::uint64_t n = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto counts = sample_multinomial(rng, n, w);
    ASSERT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), n);
    ASSERT_EQ(counts[2], 0u);
    for (std::size_t j = 0; j < w.size(); ++j) totals[j] += static_cast<double>(counts[j]);
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    EXPECT_NEAR(totals[j] / draws / static_cast<double>(n), w[j], 0.002);
  }
}

}  // namespace
}  // namespace infoeff
