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

#include "dp2s/accountant.h"

#include <cmath>
#include <limits>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dp2s {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

// Direct evaluation of the binomial-sum bound without log-space tricks,
// capped by the unsubsampled Gaussian curve.
double SubsampledRdpOracle(int alpha, double sigma, double s) {
  const long double inv = 1.0L / (static_cast<long double>(sigma) * sigma);
  long double binom = alpha * (alpha - 1) / 2.0L;
  long double sum = 1.0L + s * static_cast<long double>(s) * binom *
                               std::min(4.0L * (std::exp(inv) - 1.0L),
                                        2.0L * std::exp(inv));
  for (int j = 3; j <= alpha; ++j) {
    binom = binom * (alpha - j + 1) / j;
    sum += 2.0L * std::pow(static_cast<long double>(s), j) * binom *
           std::exp((j - 1) * j * inv / 2.0L);
  }
  return std::min(static_cast<double>(std::log(sum) / (alpha - 1)),
                  alpha / (2.0 * sigma * sigma));
}

TEST(GaussianMechanismTest, Examples) {
  EXPECT_EQ(GaussianMechanismZcdp(1.0)->rho, 0.5);
  EXPECT_EQ(GaussianMechanismZcdp(2.0)->rho, 0.125);
  EXPECT_DOUBLE_EQ(GaussianMechanismZcdp(1e6)->rho, 5e-13);
  EXPECT_FALSE(GaussianMechanismZcdp(0.0).ok());
  EXPECT_FALSE(GaussianMechanismZcdp(-1.0).ok());
}

TEST(GaussianMechanismTest, TimesTwoSigmaSquaredIsOne) {
  for (double sigma = 0.01; sigma < 1e4; sigma *= 1.37) {
    const double rho = GaussianMechanismZcdp(sigma)->rho;
    EXPECT_NEAR(rho * 2.0 * sigma * sigma, 1.0, 4e-16) << sigma;
  }
}

TEST(SvtTest, Examples) {
  EXPECT_EQ(SvtZcdp(1.0)->rho, 0.5);
  EXPECT_DOUBLE_EQ(SvtZcdp(10.0)->rho, 0.005);
  EXPECT_DOUBLE_EQ(PureDpToZcdp(1.0 / 3.0)->rho, SvtZcdp(3.0)->rho);
  EXPECT_FALSE(SvtZcdp(0.0).ok());
}

TEST(ComposeTest, ZcdpIsAdditive) {
  const ZCdp parts[] = {{0.1}, {0.2}};
  EXPECT_DOUBLE_EQ(Compose(parts)->rho, 0.3);
  const ZCdp zeros[] = {{0.0}, {0.0}, {0.0}};
  EXPECT_EQ(Compose(zeros)->rho, 0.0);
  const ZCdp swapped[] = {{0.2}, {0.1}};
  EXPECT_EQ(Compose(parts)->rho, Compose(swapped)->rho);
}

TEST(ComposeTest, RdpIsPointwise) {
  const std::vector<double> orders = {2, 4, 8};
  RdpCurve a{orders, {1.0, 2.0, 4.0}};
  RdpCurve b{orders, {0.5, 1.0, 2.0}};
  const RdpCurve parts[] = {a, b};
  const absl::StatusOr<RdpCurve> sum = Compose(parts);
  ASSERT_TRUE(sum.ok());
  EXPECT_THAT(sum->epsilons, ElementsAre(1.5, 3.0, 6.0));
}

TEST(ComposeTest, MismatchedGridsRejected) {
  RdpCurve a{{2, 4}, {1.0, 2.0}};
  RdpCurve b{{2, 8}, {1.0, 2.0}};
  const RdpCurve parts[] = {a, b};
  EXPECT_FALSE(Compose(parts).ok());
}

TEST(ConversionTest, ZcdpToApproxDpClosedForm) {
  const double expected = 0.5 + std::sqrt(2.0 * std::log(1e5));
  EXPECT_NEAR(ZcdpToApproxDp(ZCdp{0.5}, 1e-5)->epsilon, expected, 1e-9);
  EXPECT_NEAR(expected, 5.298525912, 1e-9);
  EXPECT_EQ(ZcdpToApproxDp(ZCdp{0.0}, 1e-5)->epsilon, 0.0);
  EXPECT_FALSE(ZcdpToApproxDp(ZCdp{0.5}, 0.0).ok());
  EXPECT_FALSE(ZcdpToApproxDp(ZCdp{0.5}, 1.0).ok());
}

TEST(ConversionTest, ApproxDpToZcdpClosedForm) {
  const double l = std::log(1e5);
  const double expected = std::pow(std::sqrt(1.0 + l) - std::sqrt(l), 2);
  const double rho = ApproxDpToZcdp(ApproxDp{1.0, 1e-5})->rho;
  EXPECT_NEAR(rho, expected, 1e-15);
  EXPECT_NEAR(rho, 0.0208199383, 1e-10);
  EXPECT_LT(ApproxDpToZcdp(ApproxDp{1e-9, 1e-5})->rho, 1e-18);
}

TEST(ConversionTest, RoundTripNeverLoosens) {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 8.0}) {
    for (double delta : {1e-8, 1e-6, 1e-5, 1e-3}) {
      const ZCdp rho = *ApproxDpToZcdp(ApproxDp{eps, delta});
      const double back = ZcdpToApproxDp(rho, delta)->epsilon;
      EXPECT_LE(back, eps + 1e-9);
      EXPECT_NEAR(back, eps, 1e-9);
    }
  }
}

TEST(ConversionTest, RdpMatchesBruteForceScan) {
  const double sigma = 5.0;
  const double delta = 1e-5;
  RdpCurve curve;
  curve.orders = DefaultRdpOrders();
  for (double a : curve.orders) curve.epsilons.push_back(a / (2 * sigma * sigma));
  const absl::StatusOr<RdpConversion> conv = RdpToApproxDp(curve, delta);
  ASSERT_TRUE(conv.ok());
  double best = std::numeric_limits<double>::infinity();
  double best_order = 0.0;
  for (int a = 2; a <= 256; ++a) {
    if (a > 64 && a != 128 && a != 256) continue;
    const double v = a / 50.0 + std::log(1.0 / delta) / (a - 1);
    if (v < best) {
      best = v;
      best_order = a;
    }
  }
  EXPECT_NEAR(conv->dp.epsilon, best, 1e-9);
  EXPECT_EQ(conv->order, best_order);
  EXPECT_EQ(conv->dp.delta, delta);
}

TEST(ConversionTest, RdpDegenerateAndMonotone) {
  RdpCurve single{{2.0}, {0.0}};
  EXPECT_NEAR(RdpToApproxDp(single, 1e-5)->dp.epsilon, std::log(1e5), 1e-12);
  EXPECT_FALSE(RdpToApproxDp(RdpCurve{}, 1e-5).ok());

  RdpCurve curve{DefaultRdpOrders(), {}};
  RdpCurve larger = curve;
  for (double a : curve.orders) {
    curve.epsilons.push_back(0.01 * a);
    larger.epsilons.push_back(0.01 * a + 1e-3 * std::sqrt(a));
  }
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : {1e-9, 1e-7, 1e-5, 1e-3, 1e-1}) {
    const double eps = RdpToApproxDp(curve, delta)->dp.epsilon;
    EXPECT_LE(eps, previous);
    previous = eps;
    EXPECT_LE(eps, RdpToApproxDp(larger, delta)->dp.epsilon);
  }
}

TEST(ConversionTest, DefaultOrders) {
  const std::vector<double> orders = DefaultRdpOrders();
  ASSERT_EQ(orders.size(), 65u);
  EXPECT_EQ(orders.front(), 2.0);
  EXPECT_EQ(orders[62], 64.0);
  EXPECT_EQ(orders[63], 128.0);
  EXPECT_EQ(orders[64], 256.0);
}

TEST(ConversionTest, ZcdpToRdpIsLinear) {
  const std::vector<double> orders = {2, 3, 10};
  const RdpCurve c = ZcdpToRdp(ZCdp{0.25}, orders);
  EXPECT_THAT(c.epsilons, ElementsAre(0.5, 0.75, 2.5));
}

TEST(SubsampledRdpTest, MatchesDirectSum) {
  for (double sigma : {1.0, 2.0, 5.0, 10.0}) {
    for (double s : {0.001, 0.01, 0.1, 0.5, 1.0}) {
      for (int alpha : {2, 3, 5, 8, 16, 32}) {
        const double got = *SubsampledGaussianRdp(alpha, sigma, s);
        const double want = SubsampledRdpOracle(alpha, sigma, s);
        EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, want))
            << alpha << " " << sigma << " " << s;
      }
    }
  }
}

TEST(SubsampledRdpTest, SmallSamplingRegime) {
  const double got = *SubsampledGaussianRdp(2, 10.0, 0.01);
  const double approx = 2 * 0.01 * 0.01 * 2 / 100.0;
  EXPECT_NEAR(approx, 4e-6, 1e-18);
  EXPECT_LE(got, 1.5 * approx);
  EXPECT_GE(got, approx / 1.5);
}

TEST(SubsampledRdpTest, MonotoneInSamplingAndOrder) {
  const std::vector<double> fractions = {0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0};
  for (double sigma : {2.0, 5.0, 10.0}) {
    for (int alpha = 2; alpha <= 64; ++alpha) {
      double previous = 0.0;
      for (double s : fractions) {
        const double v = *SubsampledGaussianRdp(alpha, sigma, s);
        EXPECT_GE(v, previous);
        previous = v;
      }
    }
    // Past s = 0.05 the binomial sum can dip in alpha just before the
    // unsubsampled cap takes over.
    for (double s : {0.001, 0.005, 0.01, 0.05}) {
      double previous = 0.0;
      for (int alpha = 2; alpha <= 64; ++alpha) {
        const double v = *SubsampledGaussianRdp(alpha, sigma, s);
        EXPECT_GE(v, previous) << sigma << " " << s << " " << alpha;
        previous = v;
      }
    }
  }
}

// The quadratic approximation 2 s^2 alpha / sigma^2 drops the j >= 3 terms,
// whose size relative to the j = 2 term is about s (alpha - 2) sigma^2 / 6.
// The factor-2 band is checked where that ratio is at most 0.1.
TEST(SubsampledRdpTest, QuadraticApproximationWhereHigherTermsAreSmall) {
  int checked = 0;
  for (double sigma : {5.0, 10.0, 20.0}) {
    for (double s : {1e-4, 1e-3, 0.01, 0.05}) {
      for (int alpha = 2; alpha <= 32; ++alpha) {
        if (s * (alpha - 2) * sigma * sigma > 0.6) continue;
        const double approx = 2 * s * s * alpha / (sigma * sigma);
        const double v = *SubsampledGaussianRdp(alpha, sigma, s);
        EXPECT_LE(v, 2 * approx) << alpha << " " << sigma << " " << s;
        EXPECT_GE(v, approx / 2) << alpha << " " << sigma << " " << s;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(SubsampledRdpTest, UnamplifiedSanityAndLimits) {
  for (double sigma : {2.0, 5.0, 10.0}) {
    EXPECT_GE(*SubsampledGaussianRdp(2, sigma, 1.0), 1.0 / (sigma * sigma));
  }
  EXPECT_LT(*SubsampledGaussianRdp(8, 1e8, 0.5), 1e-15);
  EXPECT_FALSE(SubsampledGaussianRdp(1, 1.0, 0.5).ok());
  EXPECT_FALSE(SubsampledGaussianRdp(2, 1.0, 0.0).ok());
  EXPECT_FALSE(SubsampledGaussianRdp(2, 1.0, 1.5).ok());
}

TEST(SubsampledRdpTest, NoOverflowAtSmallSigma) {
  const absl::StatusOr<double> v = SubsampledGaussianRdp(256, 0.5, 0.5);
  ASSERT_TRUE(v.ok());
  EXPECT_TRUE(std::isfinite(*v));
  EXPECT_GT(*v, 0.0);
}

TEST(CombinedSigmaTest, InverseSquaresAdd) {
  const double s = CombinedSigma(3.0, 4.0);
  EXPECT_NEAR(1.0 / (s * s), 1.0 / 9 + 1.0 / 16, 1e-15);
}

TEST(PlanTest, ShortStepExamples) {
  const NoisePlan a = *PlanShortStep(ZCdp{0.5}, 0.1, 100);
  EXPECT_NEAR(a.sigma_f, std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(a.sigma_g, std::sqrt(100 / 0.45), 1e-12);
  EXPECT_NEAR(a.sigma_g, 14.907119849998598, 1e-12);
  EXPECT_EQ(a.sigma_g, a.sigma_h);
  EXPECT_FALSE(a.lambda_svt.has_value());
  EXPECT_EQ(a.subsample_fraction, 1.0);

  const NoisePlan b = *PlanShortStep(ZCdp{1.0}, 0.5, 1);
  EXPECT_NEAR(b.sigma_f, 1.0, 1e-15);
  EXPECT_NEAR(b.sigma_g, std::sqrt(2.0), 1e-15);
}

// A T-iteration run releases at most T gradients and T Hessians.
TEST(PlanTest, ShortStepWorstCaseMeetsTarget) {
  for (int64_t T : {1, 7, 100, 12345}) {
    for (double rho : {0.01, 0.5, 3.0}) {
      const NoisePlan plan = *PlanShortStep(ZCdp{rho}, 0.1, T);
      const ZCdp spent =
          *AccountZcdpRun(RunCounts{0, T, 0}, plan, AccountingMode::kShortStep);
      EXPECT_LE(spent.rho, rho + 1e-12);
      EXPECT_NEAR(spent.rho, rho, 1e-12 * std::max(1.0, rho));
    }
  }
}

TEST(PlanTest, LineSearchExamples) {
  const NoisePlan plan = *PlanLineSearch(ZCdp{1.0}, 0.25, 50);
  EXPECT_NEAR(plan.sigma_g, 10.0, 1e-12);
  EXPECT_NEAR(plan.sigma_h, 10.0, 1e-12);
  ASSERT_TRUE(plan.lambda_svt.has_value());
  EXPECT_NEAR(*plan.lambda_svt, 10.0, 1e-12);
  EXPECT_NEAR(plan.sigma_f, std::sqrt(2.0), 1e-12);
  const ZCdp spent =
      *AccountZcdpRun(RunCounts{0, 50, 50}, plan, AccountingMode::kLineSearch);
  EXPECT_LE(spent.rho, 1.0 + 1e-12);
  EXPECT_TRUE(plan.warnings.empty());
}

TEST(PlanTest, LineSearchWarnsOnHugeNoise) {
  const NoisePlan plan = *PlanLineSearch(ZCdp{1.0}, 1.0 - 1e-14, 50);
  EXPECT_GT(plan.sigma_g, 1e6);
  EXPECT_FALSE(plan.warnings.empty());
  EXPECT_FALSE(PlanLineSearch(ZCdp{1.0}, 1.0, 50).ok());
}

TEST(PlanTest, SubsampledDpFormulas) {
  const double eps = 1.0, delta = 1e-5, eps_f = 0.1, delta_f = 1e-6, s = 0.01;
  const int64_t T = 400;
  const NoisePlan plan = *PlanSubsampledDp(ApproxDp{eps, delta}, eps_f, delta_f, s, T);
  const double eps0 =
      (eps - eps_f) / (8 * s * std::sqrt(2 * T * std::log(2 / (delta - delta_f))));
  const double delta0 = (delta - delta_f) / (4 * s * T);
  EXPECT_NEAR(eps0, 0.113358, 1e-6);
  EXPECT_NEAR(delta0, 5.625e-7, 1e-18);
  ASSERT_TRUE(plan.approx_dp_split.has_value());
  EXPECT_NEAR(plan.approx_dp_split->epsilon_0, eps0, 1e-15);
  EXPECT_NEAR(plan.approx_dp_split->delta_0, delta0, 1e-20);
  EXPECT_NEAR(plan.sigma_f, std::sqrt(2 * std::log(1.25 / delta_f)) / eps_f, 1e-12);
  EXPECT_NEAR(plan.sigma_f, 52.988, 1e-3);
  const double sg = std::sqrt(2 * std::log(1.25 / delta0)) / eps0;
  EXPECT_NEAR(plan.sigma_g, sg, 1e-11);
  EXPECT_NEAR(plan.sigma_g, 47.692, 1e-3);
  EXPECT_EQ(plan.sigma_h, plan.sigma_g);
  EXPECT_EQ(plan.subsample_fraction, s);
}

TEST(PlanTest, SubsampledDpSymmetricSplit) {
  const NoisePlan plan =
      *PlanSubsampledDp(ApproxDp{1.0, 1e-5}, 0.5, 5e-6, 0.05, 100);
  const double eps0 = 0.5 / (8 * 0.05 * std::sqrt(200 * std::log(2 / 5e-6)));
  EXPECT_NEAR(plan.approx_dp_split->epsilon_0, eps0, 1e-15);
  EXPECT_NEAR(plan.sigma_f, std::sqrt(2 * std::log(1.25 / 5e-6)) / 0.5, 1e-12);
}

TEST(PlanTest, SubsampledDpRejectsDegenerateSplits) {
  // eps_0 >= 1 breaks the advanced-composition precondition.
  EXPECT_FALSE(PlanSubsampledDp(ApproxDp{1.0, 1e-5}, 0.1, 1e-6, 1e-4, 1).ok());
  EXPECT_FALSE(PlanSubsampledDp(ApproxDp{1.0, 1e-5}, 1.0, 1e-6, 0.01, 10).ok());
  EXPECT_FALSE(PlanSubsampledDp(ApproxDp{1.0, 1e-5}, 0.1, 1e-5, 0.01, 10).ok());
  EXPECT_FALSE(PlanSubsampledDp(ApproxDp{1.0, 1e-5}, 0.1, 1e-6, 0.0, 10).ok());
  EXPECT_FALSE(PlanSubsampledDp(ApproxDp{2.5, 1e-5}, 0.1, 1e-6, 0.01, 10).ok());
}

TEST(PlanTest, SubsampledDpWorstCaseMeetsTarget) {
  const ApproxDp target{0.9, 1e-5};
  const int64_t T = 400;
  const NoisePlan plan = *PlanSubsampledDp(target, 0.1, 1e-6, 0.01, T);
  const ApproxDp spent = *AccountApproxDpRun(RunCounts{0, T, 0}, plan);
  EXPECT_LE(spent.epsilon, target.epsilon + 1e-12);
  EXPECT_LE(spent.delta, target.delta * (1 + 1e-12));
}

TEST(TuneTest, ReturnedPlanMeetsTarget) {
  const ApproxDp target{1.0, 1e-5};
  const absl::StatusOr<NoisePlan> plan = TuneNoisePlan(target, 0.01, 100, TuningGrid{});
  ASSERT_TRUE(plan.ok()) << plan.status();
  const RdpCurve curve =
      *MinibatchPlannedCurve(*plan, 100, DefaultRdpOrders());
  EXPECT_LE(RdpToApproxDp(curve, target.delta)->dp.epsilon, target.epsilon);
  EXPECT_EQ(plan->subsample_fraction, 0.01);
}

TEST(TuneTest, LooseTargetReturnsGridMinimum) {
  TuningGrid grid;
  grid.sigma_min = 2.0;
  const NoisePlan plan = *TuneNoisePlan(ApproxDp{50.0, 1e-5}, 0.01, 100, grid);
  EXPECT_NEAR(plan.sigma_g, 2.0, 1e-12);
  EXPECT_NEAR(plan.sigma_h, 2.0, 1e-12);
  EXPECT_NEAR(plan.sigma_f, 2.0, 1e-12);
}

TEST(TuneTest, LongerRunsNeedMoreNoise) {
  TuningGrid grid;
  grid.fixed_sigma_f = 20.0;
  double previous = 0.0;
  for (int64_t T : {25, 100, 400, 1600}) {
    const NoisePlan plan = *TuneNoisePlan(ApproxDp{1.0, 1e-5}, 0.01, T, grid);
    EXPECT_GE(plan.sigma_g, previous);
    EXPECT_EQ(plan.sigma_f, 20.0);
    previous = plan.sigma_g;
  }
}

TEST(TuneTest, InfeasibleGridIsNotFound) {
  TuningGrid grid;
  grid.sigma_max = 1.0;
  grid.sigma_min = 0.5;
  const absl::StatusOr<NoisePlan> plan =
      TuneNoisePlan(ApproxDp{0.01, 1e-5}, 0.5, 1000, grid);
  ASSERT_FALSE(plan.ok());
  EXPECT_EQ(plan.status().code(), absl::StatusCode::kNotFound);
}

TEST(AccountRunTest, ZcdpExample) {
  NoisePlan plan;
  plan.sigma_f = 2.0;
  plan.sigma_g = plan.sigma_h = 10.0;
  const ZCdp rho = *AccountZcdpRun(RunCounts{10, 2, 0}, plan, AccountingMode::kShortStep);
  EXPECT_NEAR(rho.rho, 0.5 * (0.25 + 12.0 / 100 + 2.0 / 100), 1e-15);
  EXPECT_NEAR(rho.rho, 0.195, 1e-15);
  EXPECT_EQ(AccountZcdpRun(RunCounts{}, plan, AccountingMode::kShortStep)->rho,
            0.125);
}

TEST(AccountRunTest, LineSearchAddsSvtTerm) {
  NoisePlan plan;
  plan.sigma_f = 2.0;
  plan.sigma_g = plan.sigma_h = 10.0;
  EXPECT_FALSE(
      AccountZcdpRun(RunCounts{1, 1, 2}, plan, AccountingMode::kLineSearch).ok());
  plan.lambda_svt = 5.0;
  const RunCounts counts = RunCounts::FromSteps(10, 2);
  EXPECT_EQ(counts.line_searches, 12);
  const double ss = AccountZcdpRun(counts, plan, AccountingMode::kShortStep)->rho;
  const double ls = AccountZcdpRun(counts, plan, AccountingMode::kLineSearch)->rho;
  EXPECT_NEAR(ls - ss, 12.0 / (2 * 25.0), 1e-15);
}

TEST(AccountRunTest, RdpTermByTerm) {
  NoisePlan plan;
  plan.sigma_f = 3.0;
  plan.sigma_g = 4.0;
  plan.sigma_h = 6.0;
  plan.subsample_fraction = 0.02;
  const std::vector<double> orders = {2, 3, 8, 32};
  const RunCounts counts{7, 3, 0};
  const RdpCurve curve = *AccountRdpRun(counts, plan, orders);
  const double sgh = 1.0 / std::sqrt(1.0 / 16 + 1.0 / 36);
  for (size_t i = 0; i < orders.size(); ++i) {
    const int a = static_cast<int>(orders[i]);
    const double want = a / 18.0 + 10 * SubsampledRdpOracle(a, 4.0, 0.02) +
                        3 * SubsampledRdpOracle(a, sgh, 0.02);
    EXPECT_NEAR(curve.epsilons[i], want, 1e-12);
  }
  const absl::StatusOr<PrivacySpent> spent =
      AccountRun(counts, plan, AccountingMode::kMinibatchRdp, orders);
  ASSERT_TRUE(spent.ok());
  EXPECT_EQ(std::get<RdpCurve>(*spent).epsilons, curve.epsilons);
  EXPECT_FALSE(AccountZcdpRun(counts, plan, AccountingMode::kMinibatchRdp).ok());
}

TEST(AccountRunTest, ComposeSpentKinds) {
  const PrivacySpent a = ZCdp{0.1};
  const PrivacySpent b = ZCdp{0.2};
  EXPECT_DOUBLE_EQ(std::get<ZCdp>(*ComposeSpent(a, b)).rho, 0.3);
  const PrivacySpent c = ApproxDp{0.5, 1e-6};
  EXPECT_FALSE(ComposeSpent(a, c).ok());
  const ApproxDp sum = std::get<ApproxDp>(*ComposeSpent(c, c));
  EXPECT_EQ(sum.epsilon, 1.0);
  EXPECT_EQ(sum.delta, 2e-6);
  EXPECT_NEAR(*SpentEpsilon(a, 1e-5), 0.1 + std::sqrt(0.4 * std::log(1e5)), 1e-12);
}

}  // namespace
}  // namespace dp2s
