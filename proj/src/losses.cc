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

#include <cmath>
#include <memory>
#include <numbers>

#include "absl/strings/str_format.h"
#include "dp2s/objective.h"

namespace dp2s {
namespace {

// log(1 + exp(-z)) without overflow.
double LogisticLoss(double z) {
  return z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

// d/dz log(1 + exp(-z)) = -1 / (1 + exp(z)).
double LogisticSlope(double z) {
  if (z > 0) {
    const double e = std::exp(-z);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(z));
}

// sigma(z) * sigma(-z).
double LogisticCurvature(double z) {
  const double e = std::exp(-std::abs(z));
  return e / ((1.0 + e) * (1.0 + e));
}

// sup |d^3/dz^3 log(1 + exp(-z))| = sup |s(1-s)(1-2s)| = 1/(6 sqrt 3).
constexpr double kLogisticThirdBound = 1.0 / (6.0 * std::numbers::sqrt3);

absl::Status CheckCommon(double lambda_reg, double norm_bound, int dim,
                         double weight_box) {
  if (!(lambda_reg >= 0.0)) return absl::InvalidArgumentError("lambda_reg must be >= 0");
  if (!(norm_bound > 0.0)) return absl::InvalidArgumentError("norm bound R must be > 0");
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!(weight_box > 0.0) || !std::isfinite(weight_box)) {
    return absl::InvalidArgumentError(
        "a finite weight box W is required for a bounded loss value");
  }
  return absl::OkStatus();
}

// Losses of the form phi(y <x, w>) + lambda * reg(w) with a separable
// regularizer.
class MarginLoss : public LossModel {
 public:
  MarginLoss(double lambda_reg, int dim, double weight_box)
      : lambda_(lambda_reg), dim_(dim), weight_box_(weight_box) {}

  int dim() const override { return dim_; }
  double lambda_reg() const override { return lambda_; }
  double weight_box() const override { return weight_box_; }
  const LossBounds& bounds() const override { return bounds_; }

  double Value(const Batch& batch, const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd z = Margins(batch, w);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) sum += LogisticLoss(z[i]);
    return sum / batch.size() + lambda_ * RegValue(w);
  }

  Eigen::VectorXd Gradient(const Batch& batch,
                           const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd z = Margins(batch, w);
    Eigen::VectorXd coef(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      coef[i] = batch.y()[i] * LogisticSlope(z[i]);
    }
    Eigen::VectorXd g = batch.x().transpose() * coef / batch.size();
    g += lambda_ * RegGradient(w);
    return g;
  }

  Eigen::MatrixXd Hessian(const Batch& batch,
                          const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd z = Margins(batch, w);
    Eigen::VectorXd curv(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) curv[i] = LogisticCurvature(z[i]);
    Eigen::MatrixXd h =
        batch.x().transpose() * curv.asDiagonal() * batch.x() / batch.size();
    h.diagonal() += lambda_ * RegHessianDiagonal(w);
    return h;
  }

  Eigen::VectorXd HessianVectorProduct(
      const Batch& batch, const Eigen::VectorXd& w,
      const Eigen::VectorXd& v) const override {
    const Eigen::VectorXd z = Margins(batch, w);
    Eigen::VectorXd xv = batch.x() * v;
    for (Eigen::Index i = 0; i < z.size(); ++i) xv[i] *= LogisticCurvature(z[i]);
    Eigen::VectorXd out = batch.x().transpose() * xv / batch.size();
    out += lambda_ * RegHessianDiagonal(w).cwiseProduct(v);
    return out;
  }

 protected:
  virtual double RegValue(const Eigen::VectorXd& w) const = 0;
  virtual Eigen::VectorXd RegGradient(const Eigen::VectorXd& w) const = 0;
  virtual Eigen::VectorXd RegHessianDiagonal(const Eigen::VectorXd& w) const = 0;

  LossBounds bounds_;

 private:
  static Eigen::VectorXd Margins(const Batch& batch, const Eigen::VectorXd& w) {
    return (batch.x() * w).cwiseProduct(batch.y());
  }

  double lambda_;
  int dim_;
  double weight_box_;
};

class NonconvexLogisticLoss final : public MarginLoss {
 public:
  NonconvexLogisticLoss(double lambda_reg, double R, int dim, double W)
      : MarginLoss(lambda_reg, dim, W) {
    const double sqrt_d = std::sqrt(static_cast<double>(dim));
    bounds_.value = LogisticLoss(-R * W * sqrt_d) +
                    lambda_reg * dim * W * W / (1.0 + W * W);
    bounds_.gradient = R + lambda_reg * (3.0 * std::numbers::sqrt3 / 8.0) * sqrt_d;
    bounds_.hessian = R * R / 4.0 + 2.0 * lambda_reg;
    bounds_.gradient_lipschitz = bounds_.hessian;
    bounds_.hessian_lipschitz =
        R * R * R * kLogisticThirdBound +
        lambda_reg * RegularizerThirdDerivativeBound();
    bounds_.lower = 0.0;
  }

  LossKind kind() const override { return LossKind::kNonconvexLogistic; }
  std::string name() const override { return "nonconvex_logistic"; }

 protected:
  double RegValue(const Eigen::VectorXd& w) const override {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double w2 = w[i] * w[i];
      sum += w2 / (1.0 + w2);
    }
    return sum;
  }
  Eigen::VectorXd RegGradient(const Eigen::VectorXd& w) const override {
    Eigen::VectorXd g(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double q = 1.0 + w[i] * w[i];
      g[i] = 2.0 * w[i] / (q * q);
    }
    return g;
  }
  Eigen::VectorXd RegHessianDiagonal(const Eigen::VectorXd& w) const override {
    Eigen::VectorXd h(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double w2 = w[i] * w[i];
      const double q = 1.0 + w2;
      h[i] = (2.0 - 6.0 * w2) / (q * q * q);
    }
    return h;
  }
};

class L2LogisticLoss final : public MarginLoss {
 public:
  L2LogisticLoss(double lambda_reg, double R, int dim, double W)
      : MarginLoss(lambda_reg, dim, W) {
    const double sqrt_d = std::sqrt(static_cast<double>(dim));
    bounds_.value = LogisticLoss(-R * W * sqrt_d) + 0.5 * lambda_reg * W * W * dim;
    bounds_.gradient = R + lambda_reg * W * sqrt_d;
    bounds_.hessian = R * R / 4.0 + lambda_reg;
    bounds_.gradient_lipschitz = bounds_.hessian;
    bounds_.hessian_lipschitz = R * R * R * kLogisticThirdBound;
    bounds_.lower = 0.0;
  }

  LossKind kind() const override { return LossKind::kL2Logistic; }
  std::string name() const override { return "l2_logistic"; }

 protected:
  double RegValue(const Eigen::VectorXd& w) const override {
    return 0.5 * w.squaredNorm();
  }
  Eigen::VectorXd RegGradient(const Eigen::VectorXd& w) const override {
    return w;
  }
  Eigen::VectorXd RegHessianDiagonal(const Eigen::VectorXd& w) const override {
    return Eigen::VectorXd::Ones(w.size());
  }
};

class QuarticSaddleLoss final : public LossModel {
 public:
  QuarticSaddleLoss(double R, int dim, double W)
      : R_(R), dim_(dim), weight_box_(W) {
    const double r = W * std::sqrt(static_cast<double>(dim));
    const double r2 = r * r;
    const double R2 = R * R;
    bounds_.value = 0.25 * r2 * r2 + 0.5 * R2 * r2 + 0.25 * R2 * R2;
    bounds_.gradient = r2 * r + R2 * r;
    bounds_.hessian = 3.0 * r2 + R2;
    bounds_.gradient_lipschitz = bounds_.hessian;
    bounds_.hessian_lipschitz = 6.0 * r;
    bounds_.lower = 0.0;
  }

  LossKind kind() const override { return LossKind::kCustom; }
  std::string name() const override { return "quartic_saddle"; }
  int dim() const override { return dim_; }
  double lambda_reg() const override { return 0.0; }
  double weight_box() const override { return weight_box_; }
  const LossBounds& bounds() const override { return bounds_; }

  double Value(const Batch& batch, const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd t = batch.x() * w;
    const double w2 = w.squaredNorm();
    const double R2 = R_ * R_;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) sum += batch.y()[i] * t[i] * t[i];
    return 0.25 * w2 * w2 - 0.5 * sum / batch.size() + 0.25 * R2 * R2;
  }

  Eigen::VectorXd Gradient(const Batch& batch,
                           const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd yt = (batch.x() * w).cwiseProduct(batch.y());
    Eigen::VectorXd g = w.squaredNorm() * w;
    g -= batch.x().transpose() * yt / batch.size();
    return g;
  }

  Eigen::MatrixXd Hessian(const Batch& batch,
                          const Eigen::VectorXd& w) const override {
    Eigen::MatrixXd h = 2.0 * w * w.transpose();
    h.diagonal().array() += w.squaredNorm();
    h -= batch.x().transpose() * batch.y().asDiagonal() * batch.x() / batch.size();
    return h;
  }

  Eigen::VectorXd HessianVectorProduct(
      const Batch& batch, const Eigen::VectorXd& w,
      const Eigen::VectorXd& v) const override {
    const Eigen::VectorXd yxv = (batch.x() * v).cwiseProduct(batch.y());
    Eigen::VectorXd out = w.squaredNorm() * v + 2.0 * w.dot(v) * w;
    out -= batch.x().transpose() * yxv / batch.size();
    return out;
  }

 private:
  double R_;
  int dim_;
  double weight_box_;
  LossBounds bounds_;
};

}  // namespace

double RegularizerThirdDerivativeBound() {
  // r'''(w) = 24 w (w^2 - 1) / (1 + w^2)^4; its extrema solve
  // 5 w^4 - 10 w^2 + 1 = 0.
  const double w2 = 1.0 - 2.0 / std::sqrt(5.0);
  const double w = std::sqrt(w2);
  const double q = 1.0 + w2;
  return std::abs(24.0 * w * (w2 - 1.0) / (q * q * q * q));
}

absl::StatusOr<std::unique_ptr<LossModel>> NonconvexLogistic(
    double lambda_reg, double norm_bound, int dim, double weight_box) {
  if (absl::Status s = CheckCommon(lambda_reg, norm_bound, dim, weight_box);
      !s.ok()) {
    return s;
  }
  return std::make_unique<NonconvexLogisticLoss>(lambda_reg, norm_bound, dim,
                                                 weight_box);
}

absl::StatusOr<std::unique_ptr<LossModel>> L2Logistic(
    double lambda_reg, double norm_bound, int dim, double weight_box) {
  if (absl::Status s = CheckCommon(lambda_reg, norm_bound, dim, weight_box);
      !s.ok()) {
    return s;
  }
  return std::make_unique<L2LogisticLoss>(lambda_reg, norm_bound, dim,
                                          weight_box);
}

absl::StatusOr<std::unique_ptr<LossModel>> QuarticSaddle(double norm_bound,
                                                         int dim,
                                                         double weight_box) {
  if (absl::Status s = CheckCommon(0.0, norm_bound, dim, weight_box); !s.ok()) {
    return s;
  }
  return std::make_unique<QuarticSaddleLoss>(norm_bound, dim, weight_box);
}

}  // namespace dp2s
