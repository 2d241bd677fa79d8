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

#include <random>

#include "infoeff/efficiency.hpp"
#include "oracles.hpp"

namespace infoeff {
namespace {

const std::vector<Label> kHT{"h", "t"};

JointSystem coin(double p_tail, double accuracy) {
  return joint_from_prior_channel(make_distribution(kHT, {1.0 - p_tail, p_tail}), symmetric_channel(kHT, accuracy));
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InternalConsistency;
}

TEST(Efficiency, Examples) {
  auto independent = efficiency(coin(0.5, 0.5));
  EXPECT_EQ(*independent.eff, 1.0);
  EXPECT_EQ(independent.g_max.value(), 0.0);

  auto identity = efficiency(joint_from_prior_channel(make_distribution(kHT, {0.5, 0.5}), identity_channel(kHT)));
  EXPECT_EQ(*identity.eff, 0.0);
  EXPECT_EQ(identity.g_max.value(), 1.0);

  auto sharp = efficiency(coin(0.5, 0.9));
  EXPECT_NEAR(*sharp.eff, oracle::kBinaryEntropy09, 1e-15);
  EXPECT_NEAR(sharp.g_max.value(), oracle::kGmax09, 1e-15);
  EXPECT_FALSE(sharp.eff_q.has_value());
  EXPECT_FALSE(sharp.h_q.has_value());
  EXPECT_FALSE(sharp.g_max_q.has_value());
}

TEST(Efficiency, DegenerateOutcomeIsRejected) {
  EXPECT_EQ(kind_of([] { efficiency(coin(1.0, 0.9)); }), ErrorKind::DegenerateSystem);
}

TEST(EfficiencyWithQuotes, Examples) {
  auto fair = efficiency_with_quotes(coin(0.5, 0.5), make_quotes(kHT, {0.5, 0.5}));
  EXPECT_EQ(*fair.eff_q, 1.0);

  auto biased = efficiency_with_quotes(coin(0.1, 0.5), make_quotes(kHT, {0.9, 0.1}));
  EXPECT_EQ(*biased.eff_q, 1.0);

  auto mispriced = efficiency_with_quotes(coin(0.5, 0.5), make_quotes(kHT, {0.05, 0.95}));
  EXPECT_NEAR(*mispriced.eff_q, oracle::kEffQuotesQ005, 1e-14);
  EXPECT_NEAR(mispriced.h_q->value(), oracle::kCrossEntropyQ005, 1e-14);
  EXPECT_NEAR(mispriced.g_max_q->value(), oracle::kGmaxQ005, 1e-14);
  EXPECT_EQ(*mispriced.eff, 1.0);
}

TEST(EfficiencyWithQuotes, Errors) {
  EXPECT_EQ(kind_of([] { efficiency_with_quotes(coin(0.5, 0.9), make_quotes(kHT, {1.0, 0.0})); }),
            ErrorKind::UnsupportedOutcome);
  EXPECT_EQ(kind_of([] { make_quotes(kHT, {0.6, 0.6}); }), ErrorKind::QuoteSumNotOne);
  EXPECT_EQ(kind_of([] { efficiency_with_quotes(coin(0.5, 0.9), make_quotes({"a", "b"}, {0.5, 0.5})); }),
            ErrorKind::LabelMismatch);
  EXPECT_EQ(kind_of([] { efficiency_with_quotes(coin(1.0, 0.9), make_quotes(kHT, {0.0, 1.0})); }),
            ErrorKind::DegenerateSystem);
}

TEST(EfficiencyWithQuotes, CertainOutcomeWithImperfectQuotesOmitsPlainEfficiency) {
  auto r = efficiency_with_quotes(coin(1.0, 0.9), make_quotes(kHT, {0.5, 0.5}));
  EXPECT_FALSE(r.eff.has_value());
  EXPECT_EQ(*r.eff_q, 0.0);
  EXPECT_EQ(r.h_q->value(), 1.0);
}

TEST(EfficiencyWithQuotes, PayoutsConvertToQuotes) {
  auto q = quotes_from_payouts(kHT, {20.0, 20.0 / 19.0});
  EXPECT_NEAR(q[0], 0.05, 1e-15);
  EXPECT_NEAR(q[1], 0.95, 1e-15);
}

TEST(CompareInfoSets, Examples) {
  auto reports = compare_info_sets({{InfoSetLabel::weak(), coin(0.5, 0.5)}, {InfoSetLabel::strong(), coin(0.5, 0.9)}});
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(*reports[0].eff, 1.0);
  EXPECT_NEAR(*reports[1].eff, 0.4690, 5e-5);
  EXPECT_EQ(reports[0].info_set.to_string(), "weak");
  EXPECT_EQ(reports[1].info_set.to_string(), "strong");

  auto single = compare_info_sets({{InfoSetLabel::strong(), coin(0.5, 0.5)}});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(*single[0].eff, 1.0);

  EXPECT_EQ(kind_of([] {
              compare_info_sets({{InfoSetLabel::weak(), coin(0.5, 0.5)}, {InfoSetLabel::strong(), coin(0.4, 0.9)}});
            }),
            ErrorKind::MarginalMismatch);
}

TEST(InfoSetLabel, ParseRoundTrip) {
  for (const char* text : {"weak", "semi_strong", "strong", "custom:momentum"}) {
    EXPECT_EQ(InfoSetLabel::parse(text).to_string(), text);
  }
}

std::vector<Label> names(std::size_t n, const std::string& prefix) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

TEST(EfficiencyProperties, BoundsOrderingAndAdditivity) {
  std::mt19937_64 gen(31);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t nx = 2 + gen() % 4, ny = 1 + gen() % 4;
    auto xs = names(nx, "x");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < nx; ++i) rows.push_back(oracle::random_simplex(gen, ny));
    auto joint = joint_from_prior_channel(make_distribution(xs, oracle::random_simplex(gen, nx, false)),
                                          make_channel(xs, names(ny, "y"), rows));
    auto quotes = make_quotes(xs, oracle::random_simplex(gen, nx, false));
    auto r = efficiency_with_quotes(joint, quotes);
    ASSERT_GE(*r.eff, 0.0);
    ASSERT_LE(*r.eff, 1.0);
    ASSERT_GE(*r.eff_q, 0.0);
    ASSERT_LE(*r.eff_q, 1.0);
    ASSERT_LE(*r.eff_q, *r.eff + 1e-12);
    ASSERT_NEAR(r.g_max_q->value(), r.mispricing_gap->value() + r.predictability_gap.value(), 1e-12);
    ++checked;
  }
  EXPECT_EQ(checked, 3000);
}

TEST(EfficiencyProperties, FairQuotesReproducePlainEfficiencyExactly) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t nx = 2 + gen() % 4, ny = 1 + gen() % 4;
    auto xs = names(nx, "x");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < nx; ++i) rows.push_back(oracle::random_simplex(gen, ny));
    auto prior = make_distribution(xs, oracle::random_simplex(gen, nx, false));
    auto joint = joint_from_prior_channel(prior, make_channel(xs, names(ny, "y"), rows));
    auto fair = marginal_outcome(joint);
    auto plain = efficiency(joint);
    auto quoted = efficiency_with_quotes(joint, fair);
    ASSERT_EQ(*plain.eff, *quoted.eff_q);
    ASSERT_EQ(*plain.eff, *quoted.eff);
    ASSERT_EQ(quoted.mispricing_gap->value(), 0.0);
  }
}

TEST(EfficiencyProperties, GarblingNeverLowersEfficiency) {
  std::mt19937_64 gen(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t nx = 2 + gen() % 3, ny = 2 + gen() % 3, nz = 2 + gen() % 3;
    auto xs = names(nx, "x");
    std::vector<std::vector<double>> fine_rows, garble_rows;
    for (std::size_t i = 0; i < nx; ++i) fine_rows.push_back(oracle::random_simplex(gen, ny));
    for (std::size_t i = 0; i < ny; ++i) garble_rows.push_back(oracle::random_simplex(gen, nz));
    auto prior = make_distribution(xs, oracle::random_simplex(gen, nx, false));
    auto fine = make_channel(xs, names(ny, "y"), fine_rows);
    auto coarse = compose(fine, make_channel(names(ny, "y"), names(nz, "z"), garble_rows));
    const double eff_fine = *efficiency(joint_from_prior_channel(prior, fine)).eff;
    const double eff_coarse = *efficiency(joint_from_prior_channel(prior, coarse)).eff;
    ASSERT_GE(eff_coarse, eff_fine - 1e-12);
    if (eff_coarse < 1.0 - 1e-9) {
      ASSERT_LT(eff_fine, 1.0);
    }
  }
}

}  // namespace
}  // namespace infoeff
