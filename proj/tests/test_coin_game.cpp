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

#include "infoeff/coin_game.hpp"
#include "oracles.hpp"

namespace infoeff::coin {
namespace {

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

TEST(CoinJoint, Examples) {
  auto a = coin_joint({0.5, 0.9, 0.5});
  EXPECT_DOUBLE_EQ(a.joint(0, 0), 0.45);
  EXPECT_DOUBLE_EQ(a.joint(0, 1), 0.05);
  EXPECT_DOUBLE_EQ(a.joint(1, 0), 0.05);
  EXPECT_DOUBLE_EQ(a.joint(1, 1), 0.45);
  EXPECT_EQ(a.quotes[0], 0.5);
  EXPECT_EQ(a.quotes[1], 0.5);

  auto b = coin_joint({0.5, 0.5, 0.5});
  for (double c : b.joint.cells()) EXPECT_EQ(c, 0.25);

  auto c = coin_joint({0.9, 0.5, 0.9});
  auto px = marginal_outcome(c.joint);
  EXPECT_NEAR(px[0], 0.1, 1e-15);
  EXPECT_NEAR(px[1], 0.9, 1e-15);
  EXPECT_DOUBLE_EQ(c.joint(1, 0), c.joint(1, 1));
}

TEST(CoinGameParams, Validation) {
  EXPECT_EQ(kind_of([] { CoinGameParams{1.5, 0.5, 0.5}.validate(); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { CoinGameParams{0.5, -0.1, 0.5}.validate(); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { CoinGameParams{0.5, 0.5, 0.0}.validate(); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { CoinGameParams{0.5, 0.5, 1.0}.validate(); }), ErrorKind::DomainViolation);
  CoinGameParams p{0.5, 0.5, 0.25};
  EXPECT_EQ(p.alpha_tail(), 4.0);
  EXPECT_NEAR(p.alpha_head(), p.alpha_tail() / (p.alpha_tail() - 1.0), 1e-15);
}

TEST(ClosedForm, EfficiencyFair) {
  EXPECT_EQ(closed_form_efficiency_fair(0.5), 1.0);
  EXPECT_EQ(closed_form_efficiency_fair(1.0), 0.0);
  EXPECT_EQ(closed_form_efficiency_fair(0.0), 0.0);
  EXPECT_NEAR(closed_form_efficiency_fair(0.55), oracle::kBinaryEntropy055, 1e-15);
  EXPECT_NEAR(closed_form_efficiency_fair(0.9), oracle::kBinaryEntropy09, 1e-15);
}

TEST(ClosedForm, Entropy) {
  EXPECT_EQ(closed_form_entropy(0.5).value(), 1.0);
  EXPECT_EQ(closed_form_entropy(1.0).value(), 0.0);
  EXPECT_NEAR(closed_form_entropy(0.9).value(), oracle::kBinaryEntropy09, 1e-15);
}

TEST(ClosedForm, QuotedEfficiencyAndEntropy) {
  EXPECT_EQ(closed_form_efficiency_unfair_quotes(0.5), 1.0);
  EXPECT_NEAR(closed_form_efficiency_unfair_quotes(0.05), oracle::kEffQuotesQ005, 1e-14);
  EXPECT_NEAR(closed_form_efficiency_unfair_quotes(0.005), oracle::kEffQuotesQ0005, 1e-14);
  EXPECT_EQ(closed_form_quote_entropy(0.5).value(), 1.0);
  EXPECT_NEAR(closed_form_quote_entropy(0.05).value(), oracle::kCrossEntropyQ005, 1e-14);
  EXPECT_NEAR(closed_form_quote_entropy(0.95).value(), oracle::kCrossEntropyQ005, 1e-14);
  EXPECT_NEAR(closed_form_quote_entropy(0.005).value(), oracle::kCrossEntropyQ0005, 1e-14);
  EXPECT_EQ(kind_of([] { closed_form_quote_entropy(0.0); }), ErrorKind::DomainViolation);
}

TEST(ClosedForm, Symmetry) {
  for (int i = 1; i < 100; ++i) {
    const double v = i / 100.0;
    EXPECT_NEAR(closed_form_efficiency_fair(v), closed_form_efficiency_fair(1.0 - v), 1e-15);
    EXPECT_NEAR(closed_form_quote_entropy(v).value(), closed_form_quote_entropy(1.0 - v).value(), 1e-14);
  }
}

TEST(ClosedForm, BiasedCoinWithFairQuotesIsFullyEfficient) {
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    auto system = coin_joint({p, 0.5, p});
    EXPECT_EQ(*efficiency_with_quotes(system.joint, system.quotes).eff_q, 1.0) << "p_tail " << p;
  }
}

TEST(ClosedForm, AgreesWithGeneralPipelineOnGrid) {
  for (int i = 0; i < 21; ++i) {
    for (int j = 0; j < 21; ++j) {
      for (int k = 0; k < 21; ++k) {
        CoinGameParams params{(i + 1) / 22.0, (j + 1) / 22.0, (k + 1) / 22.0};
        auto system = coin_joint(params);
        auto general = efficiency_with_quotes(system.joint, system.quotes);
        auto closed = closed_form_report(params);
        ASSERT_NEAR(general.h_x_given_y.value(), closed.h_x_given_y.value(), 1e-10);
        ASSERT_NEAR(general.h_q->value(), closed.h_q.value(), 1e-10);
        ASSERT_NEAR(*general.eff, *closed.eff, 1e-10);
        ASSERT_NEAR(*general.eff_q, closed.eff_q, 1e-10);
        ASSERT_NEAR(general.g_max_q->value(), closed.g_max_q.value(), 1e-10);
      }
    }
  }
}

TEST(Sweep, QuarterStepExample) {
  auto rows = sweep(Curve::EffVsAccuracy, SweepGrid{5, 0.0, 1.0, true});
  ASSERT_EQ(rows.size(), 5u);
  const double expected[] = {0.0, oracle::kBinaryEntropy025, 1.0, oracle::kBinaryEntropy025, 0.0};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(rows[i].param, 0.25 * static_cast<double>(i));
    EXPECT_NEAR(rows[i].value, expected[i], 1e-15);
  }
  EXPECT_NEAR(rows[1].value, 0.8113, 5e-5);
}

TEST(Sweep, DefaultGrids) {
  auto entropy = sweep(Curve::EntropyVsPTail);
  ASSERT_EQ(entropy.size(), 1001u);
  EXPECT_EQ(entropy.front().value, 0.0);
  EXPECT_EQ(entropy.back().value, 0.0);
  EXPECT_EQ(entropy[500].param, 0.5);
  EXPECT_EQ(entropy[500].value, 1.0);

  auto effq = sweep(Curve::EffVsQ);
  ASSERT_EQ(effq.size(), 999u);
  EXPECT_EQ(effq[499].param, 0.5);
  EXPECT_EQ(effq[499].value, 1.0);
}

TEST(Sweep, DomainViolations) {
  EXPECT_EQ(kind_of([] { sweep(Curve::EffVsQ, SweepGrid{11, 0.0, 1.0, true}); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { sweep(Curve::EffVsAccuracy, SweepGrid{11, -0.5, 1.0, true}); }),
            ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { sweep(Curve::HqVsQ, SweepGrid{1, 0.1, 0.9, true}); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { parse_curve("nope"); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(parse_curve("hq_vs_q"), Curve::HqVsQ);
}

}  // namespace
}  // namespace infoeff::coin
