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

#include "dp2s/spectral.h"

#include <cmath>

#include "gtest/gtest.h"

namespace dp2s {
namespace {

// Symmetric matrix with prescribed spectrum and a random eigenbasis.
Eigen::MatrixXd WithSpectrum(const Eigen::VectorXd& eig, SeededRng& rng) {
  const int d = static_cast<int>(eig.size());
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i) g.col(i) = GaussianVector(d, 1.0, rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::MatrixXd h = q * eig.asDiagonal() * q.transpose();
  return 0.5 * (h + h.transpose());
}

SymmetricOperator OperatorOf(const Eigen::MatrixXd& h) {
  return SymmetricOperator{static_cast<int>(h.rows()),
                           [&h](const Eigen::VectorXd& v) -> Eigen::VectorXd {
                             return h * v;
                           },
                           &h};
}

TEST(DenseEigTest, Diagonal) {
  const Eigen::MatrixXd h = Eigen::Vector3d(1, -2, 3).asDiagonal();
  const EigenResult r = *MinEigenpairDense(h);
  EXPECT_NEAR(r.lambda_min, -2.0, 1e-15);
  EXPECT_NEAR(std::abs((*r.direction)(1)), 1.0, 1e-15);
  EXPECT_EQ(r.source, EigenSource::kDense);
}

TEST(DenseEigTest, Residual) {
  SeededRng rng(1);
  const int d = 20;
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) a.col(i) = GaussianVector(d, 1.0, rng);
  const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
  const EigenResult r = *MinEigenpairDense(h);
  const Eigen::VectorXd& v = *r.direction;
  EXPECT_NEAR(v.norm(), 1.0, 1e-14);
  EXPECT_LE((h * v - r.lambda_min * v).norm(), 1e-10);
  EXPECT_LE(r.lambda_min, v.dot(h * v) + 1e-12);
  for (int t = 0; t < 50; ++t) {
    const Eigen::VectorXd u = GaussianVector(d, 1.0, rng).normalized();
    EXPECT_GE(u.dot(h * u), r.lambda_min - 1e-12);
  }
}

TEST(DenseEigTest, IdentityAndRejections) {
  EXPECT_NEAR(MinEigenpairDense(Eigen::MatrixXd::Identity(7, 7))->lambda_min, 1.0,
              1e-15);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(3, 3);
  h(0, 1) = 0.5;
  EXPECT_FALSE(MinEigenpairDense(h).ok());
  EXPECT_FALSE(MinEigenpairDense(Eigen::MatrixXd(2, 3)).ok());
  EXPECT_FALSE(MinEigenpairDense(Eigen::MatrixXd(0, 0)).ok());
}

TEST(LanczosTest, IterationCap) {
  EXPECT_EQ(LanczosIterationCap(54, 100.0, 1.0, 0.1), 50);
  EXPECT_EQ(LanczosIterationCap(10, 100.0, 1.0, 0.1), 10);
  const double k = 0.5 * std::log(2.75 * 1000 / 0.0025) * std::sqrt(4.0 / 0.01);
  EXPECT_EQ(LanczosIterationCap(1000, 4.0, 0.01, 0.05), 1 + static_cast<int>(std::ceil(k)));
}

TEST(LanczosTest, FullKrylovMatchesDense) {
  SeededRng rng(2);
  const int d = 12;
  const Eigen::MatrixXd h = WithSpectrum(Eigen::VectorXd::LinSpaced(d, -1.0, 2.0), rng);
  // A huge norm/eps ratio forces the cap to d, where Lanczos is exact.
  const EigenResult r = *LanczosMinEig(OperatorOf(h), 1e6, 1e-6, 0.1, rng);
  EXPECT_EQ(r.source, EigenSource::kLanczos);
  EXPECT_EQ(r.iterations, d);
  EXPECT_NEAR(r.lambda_min, -1.0, 1e-9);
  EXPECT_LE((h * *r.direction - r.lambda_min * *r.direction).norm(), 1e-7);
}

// The estimate is a Ritz value, so it never undershoots the true minimum, and
// with probability at least 1 - delta_l it is within eps/2.
TEST(LanczosTest, AccuracyGuarantee) {
  SeededRng rng(3);
  const int d = 200;
  const double eps = 0.05, delta_l = 0.05;
  Eigen::VectorXd eig(d);
  for (int i = 0; i < d; ++i) eig(i) = 2.0 * rng.Uniform() - 1.0;
  eig(0) = -1.0;
  const Eigen::MatrixXd h = WithSpectrum(eig, rng);
  int misses = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const EigenResult r = *LanczosMinEig(OperatorOf(h), 1.0, eps, delta_l, rng);
    EXPECT_LT(r.iterations, d);
    EXPECT_GE(r.lambda_min, -1.0 - 1e-10);
    if (r.lambda_min > -1.0 + eps / 2) ++misses;
  }
  EXPECT_LE(misses, 3 * delta_l * trials);
}

TEST(LanczosTest, InvariantStartRestarts) {
  // diag with a repeated eigenvalue: the Krylov space from any start is at
  // most 2-dimensional, so the run breaks down and restarts.
  Eigen::VectorXd eig = Eigen::VectorXd::Ones(6);
  eig(0) = -1.0;
  SeededRng rng(4);
  const Eigen::MatrixXd h = eig.asDiagonal();
  const EigenResult r = *LanczosMinEig(OperatorOf(h), 1e6, 1e-6, 0.1, rng);
  EXPECT_GE(r.restarts, 1);
  EXPECT_NEAR(r.lambda_min, -1.0, 1e-9);
}

TEST(LanczosTest, RejectsBadArguments) {
  SeededRng rng(5);
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_FALSE(LanczosMinEig(OperatorOf(h), 1.0, 0.0, 0.1, rng).ok());
  EXPECT_FALSE(LanczosMinEig(OperatorOf(h), 1.0, 0.1, 1.0, rng).ok());
  EXPECT_FALSE(LanczosMinEig(OperatorOf(h), 0.0, 0.1, 0.1, rng).ok());
  EXPECT_FALSE(LanczosMinEig(SymmetricOperator{}, 1.0, 0.1, 0.1, rng).ok());
}

TEST(CurvatureTest, Thresholds) {
  EigenResult dense;
  dense.lambda_min = -0.3;
  dense.direction = Eigen::Vector2d(1, 0);
  EXPECT_TRUE(DecideCurvature(dense, 0.2).negative_curvature);
  EXPECT_TRUE(DecideCurvature(dense, 0.2).direction.has_value());
  dense.lambda_min = -0.2;
  EXPECT_FALSE(DecideCurvature(dense, 0.2).negative_curvature);
  EXPECT_FALSE(DecideCurvature(dense, 0.2).direction.has_value());

  EigenResult lanczos = dense;
  lanczos.source = EigenSource::kLanczos;
  lanczos.lambda_min = -0.1;
  EXPECT_TRUE(DecideCurvature(lanczos, 0.2).negative_curvature);
  lanczos.lambda_min = -0.09;
  EXPECT_FALSE(DecideCurvature(lanczos, 0.2).negative_curvature);
  EXPECT_EQ(DecideCurvature(lanczos, 0.2).lambda, -0.09);
}

TEST(OrientTest, Examples) {
  const Eigen::Vector2d v(1, 0);
  EXPECT_EQ(Orient(v, Eigen::Vector2d(2, 1)), Eigen::VectorXd(-v));
  EXPECT_EQ(Orient(v, Eigen::Vector2d(-2, 1)), Eigen::VectorXd(v));
  EXPECT_EQ(Orient(v, Eigen::Vector2d(0, 1)), Eigen::VectorXd(v));
  SeededRng rng(6);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd d = GaussianVector(4, 1.0, rng);
    const Eigen::VectorXd g = GaussianVector(4, 1.0, rng);
    const Eigen::VectorXd p = Orient(d, g);
    EXPECT_LE(p.dot(g), 0.0);
    EXPECT_EQ(p.cwiseAbs(), d.cwiseAbs());
  }
}

}  // namespace
}  // namespace dp2s
