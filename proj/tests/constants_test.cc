//
// Copyright 2026 The dp2s Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dp2s/constants.h"

#include <cmath>

#include "gtest/gtest.h"

namespace dp2s {
namespace {

double R(double t, double c, double c2, double c_h) {
  return -t * t / 6.0 + 0.5 * (1.0 - c - c_h) * t - c2;
}

TEST(RootsTest, DegenerateZeroRoot) {
  const auto roots = *RootsT1T2(0.0, 0.0, 0.5);
  EXPECT_NEAR(roots.first, 0.0, 1e-15);
  EXPECT_NEAR(roots.second, 1.5, 1e-15);
}

TEST(RootsTest, PolynomialResidual) {
  const auto [t1, t2] = *RootsT1T2(0.05, 0.05, 0.3);
  EXPECT_LT(0.0, t1);
  EXPECT_LT(t1, t2);
  EXPECT_NEAR(R(t1, 0.05, 0.05, 0.3), 0.0, 1e-12);
  EXPECT_NEAR(R(t2, 0.05, 0.05, 0.3), 0.0, 1e-12);
}

TEST(RootsTest, SignScan) {
  const double c = 0.05, c2 = 0.05, c_h = 0.3;
  const auto [t1, t2] = *RootsT1T2(c, c2, c_h);
  for (int i = 0; i <= 1000; ++i) {
    const double t = -1.0 + 5.0 * i / 1000.0;
    const double r = R(t, c, c2, c_h);
    if (t > t1 + 1e-9 && t < t2 - 1e-9) {
      EXPECT_GE(r, 0.0) << t;
    } else if (t < t1 - 1e-9 || t > t2 + 1e-9) {
      EXPECT_LT(r, 0.0) << t;
    }
  }
}

TEST(RootsTest, NegativeDiscriminant) {
  EXPECT_FALSE(RootsT1T2(0.1, 0.3, 0.8).ok());
}

TEST(MinDecTest, ShortExample) {
  const double v = *MinDecShort(1, 1, 0.1, 0.3, 0.1, 0.1, 0.1);
  EXPECT_NEAR(v, 0.004, 1e-15);
  const double curvature = 2 * (1.0 / 3 - 0.2) * 0.027;
  EXPECT_NEAR(curvature, 0.0072, 1e-15);
  EXPECT_FALSE(MinDecShort(1, 1, 0.1, 0.3, 0.5, 0.1, 0.1).ok());
  EXPECT_FALSE(MinDecShort(1, 1, 0.1, 0.3, 0.1, 0.2, 0.2).ok());
}

TEST(MinDecTest, ShortGradientBranchScalesQuadratically) {
  // eps_h large enough that the gradient branch is active at both sizes.
  const double a = *MinDecShort(1, 1, 0.01, 10.0, 0.1, 0.1, 0.1);
  const double b = *MinDecShort(1, 1, 0.02, 10.0, 0.1, 0.1, 0.1);
  EXPECT_NEAR(b, 4 * a, 1e-18);
}

TEST(MinDecTest, LineSearchExample) {
  const auto [t1, t2] = *RootsT1T2(0.1, 0.1, 0.3);
  const double v = *MinDecLineSearch(1, 1, 0.1, 0.3, 0.1, 0.4, 0.3, t2);
  const double gradient = (1 - 0.1 - 0.4) * 0.4 * 0.01;
  const double curvature = 0.25 * 0.3 * t2 * t2 * 0.027;
  EXPECT_NEAR(v, std::min(gradient, curvature), 1e-15);
  EXPECT_GT(gradient, 0.0);
  EXPECT_GT(curvature, 0.0);
}

TEST(MinDecTest, LineSearchGradientBranchPeaksAtHalf) {
  const double c1 = 0.1;
  const double best = 0.5 * (1 - c1);
  auto branch = [&](double c_g) {
    return *MinDecLineSearch(1, 1, 0.1, 100.0, c1, c_g, 0.3, 1.0);
  };
  const double peak = branch(best);
  for (double c_g = 0.01; c_g < 1 - c1; c_g += 0.01) {
    EXPECT_LE(branch(c_g), peak + 1e-18) << c_g;
  }
}

TEST(IterationBudgetTest, Examples) {
  EXPECT_EQ(*IterationBudget(1.0, 0.0, 0.0, 0.01), 100);
  EXPECT_EQ(*IterationBudget(0.5, 0.0, 0.5, 0.01), 1);
  EXPECT_EQ(*IterationBudget(0.0, 0.0, 1.0, 0.01), 1);
  EXPECT_FALSE(IterationBudget(1.0, 0.0, 0.0, 0.0).ok());
  EXPECT_FALSE(IterationBudget(1e300, 0.0, 0.0, 1e-300).ok());
}

TEST(IterationBudgetTest, MonotoneInNoise) {
  int64_t previous = 0;
  for (double z = 0.0; z < 2.0; z += 0.013) {
    const int64_t a = *IterationBudget(1.0, z, 0.0, 0.003);
    const int64_t b = *IterationBudget(1.0, -z, 0.0, 0.003);
    EXPECT_EQ(a, b);
    EXPECT_GE(a, previous);
    previous = a;
  }
}

TEST(ValidateTest, Defaults) {
  const AlgorithmConstants k;
  EXPECT_TRUE(ValidateShortStepConstants(k).ok());
  EXPECT_TRUE(ValidateLineSearchConstants(k).ok());
}

TEST(ValidateTest, Ranges) {
  AlgorithmConstants k;
  k.c1 = 0.5;
  EXPECT_FALSE(ValidateShortStepConstants(k).ok());
  k = {};
  k.c2 = 0.2;
  k.c = 0.2;
  EXPECT_FALSE(ValidateShortStepConstants(k).ok());
  k = {};
  k.c_g = 0.9;
  EXPECT_FALSE(ValidateLineSearchConstants(k).ok());
  EXPECT_TRUE(ValidateShortStepConstants(k).ok());
  k = {};
  k.c_h = 1.0 - k.c - std::sqrt(8 * k.c2 / 3) + 1e-9;
  EXPECT_FALSE(ValidateLineSearchConstants(k).ok());
  k = {};
  k.b_g = 1.0;
  EXPECT_FALSE(ValidateLineSearchConstants(k).ok());
  k = {};
  k.zeta = 1.0;
  EXPECT_FALSE(ValidateShortStepConstants(k).ok());
}

TEST(ValidateTest, BacktrackingMustReachWindow) {
  AlgorithmConstants k;
  const auto [t1, t2] = *RootsT1T2(k.c, k.c2, k.c_h);
  k.beta_h = 0.99 * t1 / t2;
  EXPECT_FALSE(ValidateLineSearchConstants(k).ok());
  k.beta_h = std::min(0.99, 1.01 * t1 / t2);
  EXPECT_TRUE(ValidateLineSearchConstants(k).ok());
}

TEST(MaxProbesTest, ExactPowers) {
  EXPECT_EQ(LineSearchMaxProbes(2.0, 1.0, 0.5), 2);
  EXPECT_EQ(LineSearchMaxProbes(8.0, 1.0, 0.5), 4);
  EXPECT_EQ(LineSearchMaxProbes(3.0, 1.0, 0.5), 2);
  EXPECT_EQ(LineSearchMaxProbes(1.0, 1.0, 0.5), 1);
  // Ratio 2^19 admits the probes beta^0 .. beta^19.
  EXPECT_EQ(LineSearchMaxProbes(std::pow(2.0, 19), 1.0, 0.5), 20);
}

TEST(PresetTest, Values) {
  EXPECT_EQ(kCovertypeLoose.eps_g, 0.060);
  EXPECT_EQ(kCovertypeLoose.eps_h, 0.245);
  EXPECT_EQ(kCovertypeTight.eps_g, 0.030);
  EXPECT_EQ(kCovertypeTight.eps_h, 0.173);
  EXPECT_EQ(kIjcnnLoose.eps_g, 0.040);
  EXPECT_EQ(kIjcnnLoose.eps_h, 0.200);
  EXPECT_EQ(kIjcnnTight.eps_g, 0.020);
  EXPECT_EQ(kIjcnnTight.eps_h, 0.141);
}

}  // namespace
}  // namespace dp2s
