// Copyright 2026 The cvbell Authors
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

#include "cvbell/epr.hpp"
#include "cvbell/errors.hpp"
#include "oracles.hpp"

namespace cvbell {
namespace {

// min_g Var(X^A - g X^B) by direct minimization of the quadratic.
double numeric_inference_error(const GaussianCovariance& c, int a, int b) {
  const auto var = [&](double g) { return c.var(a) - 2 * g * c.cov(a, b) + g * g * c.var(b); };
  return std::sqrt(testing::golden_minimum(var, -5, 5));
}

TEST(InferenceErrors, VacuumHasNoInferencePower) {
  const auto e = inference_errors(tmsv_covariance(0.0));
  EXPECT_DOUBLE_EQ(e.delta1, 1.0);
  EXPECT_DOUBLE_EQ(e.delta2, 1.0);
  EXPECT_EQ(e.gain1, 0.0);
}

TEST(InferenceErrors, MatchesNumericMinimization) {
  for (double r : {0.2, 1.0, 1.7}) {
    const auto c = tmsv_covariance(r);
    const auto e = inference_errors(c);
    EXPECT_NEAR(e.delta1, numeric_inference_error(c, quad::kXA, quad::kXB), 1e-6) << r;
    EXPECT_NEAR(e.delta2, numeric_inference_error(c, quad::kPA, quad::kPB), 1e-6) << r;
    EXPECT_NEAR(e.gain1, std::tanh(2 * r), 1e-14);
    EXPECT_NEAR(e.gain2, -std::tanh(2 * r), 1e-14);
  }
  EXPECT_NEAR(inference_errors(tmsv_covariance(1.0)).delta1, 0.5156, 5e-5);
  EXPECT_NEAR(inference_errors(tmsv_covariance(1.0)).delta1, 1 / std::sqrt(std::cosh(2.0)), 1e-14);
}

TEST(InferenceErrors, DecreaseWithSqueezing) {
  double previous = 2.0;
  for (int k = 0; k <= 40; ++k) {
    const double d = inference_errors(tmsv_covariance(0.05 * k)).delta1;
    EXPECT_LT(d, previous);
    previous = d;
  }
}

TEST(InferenceErrors, ProductLaw) {
  auto rng = testing::property_rng(13);
  for (int t = 0; t < 50; ++t) {
    const double r = testing::uniform(rng, 0, 3);
    const auto e = inference_errors(tmsv_covariance(r));
    EXPECT_NEAR(e.delta1 * e.delta2, 1 / std::cosh(2 * r), 1e-10) << r;
  }
}

TEST(InferenceErrors, AdditiveErrorHookAndSingularity) {
  const auto e = inference_errors(tmsv_covariance(1.0), 0.25);
  EXPECT_NEAR(e.delta1, 1 / std::sqrt(std::cosh(2.0)) + 0.25, 1e-14);
  GaussianCovariance c;
  c.matrix(quad::kXB, quad::kXB) = 0.0;
  EXPECT_THROW(inference_errors(c), SingularCovariance);
}

TEST(EprCriterion, VacuumBoundaryIsNotSatisfied) {
  for (double E : {1.0, 37.0, 1e4}) {
    const auto r = epr_criterion(1.0, 1.0, E);
    EXPECT_EQ(r.product, r.bound);
    EXPECT_FALSE(r.satisfied);
    EXPECT_EQ(r.sz_scale, E * E);
  }
}

TEST(EprCriterion, ModerateSqueezingExample) {
  const auto r = epr_for_squeezing(1.0, 100.0);
  EXPECT_NEAR(r.product, 664.6, 0.1);
  EXPECT_EQ(r.bound, 2500.0);
  EXPECT_TRUE(r.satisfied);
  ASSERT_TRUE(r.r.has_value());
  EXPECT_EQ(*r.r, 1.0);
}

TEST(EprCriterion, SatisfiedFlagIgnoresE) {
  auto rng = testing::property_rng(14);
  for (int t = 0; t < 100; ++t) {
    const double d1 = testing::uniform(rng, 0.1, 2), d2 = testing::uniform(rng, 0.1, 2);
    const bool expected = d1 * d2 < 1.0;
    for (double E : {0.5, 10.0, 1e5}) EXPECT_EQ(epr_criterion(d1, d2, E).satisfied, expected);
  }
}

TEST(EprCriterion, SatisfiedExactlyForPositiveSqueezing) {
  EXPECT_FALSE(epr_for_squeezing(0.0, 100).satisfied);
  for (double r : {0.01, 0.5, 1.0, 2.0, 4.0}) EXPECT_TRUE(epr_for_squeezing(r, 100).satisfied) << r;
}

TEST(EprCriterion, ReducedStateRespectsTheUncertaintyRelation) {
  // Locally the squeezed vacuum is thermal: its own spread obeys the bound
  // that the inferred spread beats.
  for (double r : {0.3, 1.0, 2.0}) {
    const auto c = tmsv_covariance(r);
    EXPECT_NEAR(std::sqrt(c.var(quad::kXA) * c.var(quad::kPA)), std::cosh(2 * r), 1e-12);
    EXPECT_GE(std::sqrt(c.var(quad::kXA) * c.var(quad::kPA)), 1.0);
    EXPECT_LT(epr_for_squeezing(r, 10).product, epr_for_squeezing(r, 10).bound);
  }
}

TEST(Margins, BoundaryAndExample) {
  const auto zero = macroscopicity_margins(epr_criterion(1.0, 1.0, 50.0), 1.0);
  EXPECT_EQ(zero.m1, 0.0);
  EXPECT_FALSE(zero.macroscopic1);

  const auto m = macroscopicity_margins(epr_for_squeezing(1.0, 1000.0), 100.0);
  EXPECT_NEAR(m.m1, 484, 0.5);
  EXPECT_NEAR(m.m1, 1000 * (1 - 1 / std::sqrt(std::cosh(2.0))), 1e-9);
  EXPECT_EQ(m.m1, m.m2);
  EXPECT_TRUE(m.macroscopic1);
  EXPECT_TRUE(m.macroscopic2);
  EXPECT_EQ(m.threshold, 100.0);
}

TEST(Margins, LinearInE) {
  for (double r : {0.4, 1.3}) {
    const double m10 = macroscopicity_margins(epr_for_squeezing(r, 10.0)).m1;
    const double m1e4 = macroscopicity_margins(epr_for_squeezing(r, 1e4)).m1;
    EXPECT_NEAR(m1e4 / m10, 1e3, 1e-9);
  }
  EXPECT_EQ(macroscopicity_margins(epr_for_squeezing(1.0, 100.0)).threshold, kDefaultMacroscopicThreshold);
}

}  // namespace
}  // namespace cvbell
