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

#ifndef DP2S_OBJECTIVE_H_
#define DP2S_OBJECTIVE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "dp2s/constants.h"
#include "dp2s/mechanisms.h"

namespace dp2s {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Dataset {
 public:
  // Labels must be +1 or -1. `norm_bound` declares R; it must dominate every
  // row norm and defaults to the largest one.
  static absl::StatusOr<Dataset> Create(
      RowMatrix features, Eigen::VectorXd labels,
      std::optional<double> norm_bound = std::nullopt);

  int num_samples() const { return static_cast<int>(features_.rows()); }
  int dim() const { return static_cast<int>(features_.cols()); }
  const RowMatrix& features() const { return features_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  double feature_norm_bound() const { return norm_bound_; }

 private:
  Dataset(RowMatrix features, Eigen::VectorXd labels, double norm_bound)
      : features_(std::move(features)),
        labels_(std::move(labels)),
        norm_bound_(norm_bound) {}

  RowMatrix features_;
  Eigen::VectorXd labels_;
  double norm_bound_;
};

// Rows the loss is averaged over: either a view of the whole dataset or an
// owned copy of selected rows.
class Batch {
 public:
  static Batch Full(const Dataset& data);
  static Batch Rows(const Dataset& data, const std::vector<int>& indices);

  int size() const { return static_cast<int>(x().rows()); }
  const RowMatrix& x() const { return owned_x_ ? *owned_x_ : *full_x_; }
  const Eigen::VectorXd& y() const { return owned_y_ ? *owned_y_ : *full_y_; }

 private:
  const RowMatrix* full_x_ = nullptr;
  const Eigen::VectorXd* full_y_ = nullptr;
  std::shared_ptr<const RowMatrix> owned_x_;
  std::shared_ptr<const Eigen::VectorXd> owned_y_;
};

class BatchSelector {
 public:
  static BatchSelector Full() { return BatchSelector(0); }
  static BatchSelector WithoutReplacement(int m) { return BatchSelector(m); }

  bool is_full() const { return m_ == 0; }
  // Batch size for a dataset of n rows.
  int batch_size(int n) const { return is_full() ? n : m_; }

  // Draws the index set. When m equals n the whole dataset is used in its
  // stored order and no randomness is consumed.
  absl::StatusOr<Batch> Draw(const Dataset& data, SeededRng& rng) const;

  // Sorted indices of a uniformly random m-subset of [0, n).
  static std::vector<int> SampleIndices(int n, int m, SeededRng& rng);

 private:
  explicit BatchSelector(int m) : m_(m) {}
  int m_;
};

enum class LossKind { kNonconvexLogistic, kL2Logistic, kCustom };

// Per-sample bounds on the weight box ||w||_inf <= W and ||x|| <= R.
struct LossBounds {
  std::optional<double> value;  // B with 0 <= l <= B
  double gradient = 0.0;        // B_g
  double hessian = 0.0;         // B_H
  double gradient_lipschitz = 0.0;  // G
  double hessian_lipschitz = 0.0;   // M
  double lower = 0.0;               // lower bound on the average loss
};

// A per-sample loss l(w; x, y) with derivatives averaged over a batch.
class LossModel {
 public:
  virtual ~LossModel() = default;

  virtual LossKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual double lambda_reg() const = 0;
  virtual double weight_box() const = 0;
  virtual const LossBounds& bounds() const = 0;

  virtual double Value(const Batch& batch, const Eigen::VectorXd& w) const = 0;
  virtual Eigen::VectorXd Gradient(const Batch& batch,
                                   const Eigen::VectorXd& w) const = 0;
  virtual Eigen::MatrixXd Hessian(const Batch& batch,
                                  const Eigen::VectorXd& w) const = 0;
  virtual Eigen::VectorXd HessianVectorProduct(
      const Batch& batch, const Eigen::VectorXd& w,
      const Eigen::VectorXd& v) const = 0;
};

// log(1 + exp(-y<x,w>)) + lambda * sum_i w_i^2 / (1 + w_i^2).
absl::StatusOr<std::unique_ptr<LossModel>> NonconvexLogistic(
    double lambda_reg, double norm_bound, int dim, double weight_box = 10.0);

// log(1 + exp(-y<x,w>)) + lambda/2 ||w||^2.
absl::StatusOr<std::unique_ptr<LossModel>> L2Logistic(
    double lambda_reg, double norm_bound, int dim, double weight_box = 10.0);

// 1/4 ||w||^4 - y/2 <x,w>^2 + R^4/4. Nonnegative when ||x|| <= R; paired with
// the planted-saddle dataset its average has a strict saddle at the origin.
absl::StatusOr<std::unique_ptr<LossModel>> QuarticSaddle(double norm_bound,
                                                         int dim,
                                                         double weight_box);

// sup_w |d^3/dw^3 w^2/(1+w^2)|, attained at w^2 = 1 - 2/sqrt(5).
double RegularizerThirdDerivativeBound();

enum class EvalOrder { kValue, kGradient, kHessian, kHvp };

struct EvalResult {
  double value = 0.0;
  Eigen::VectorXd vector;
  Eigen::MatrixXd matrix;
};

// Loss quantities averaged over a batch, with a cap on dense Hessians.
class Objective {
 public:
  static constexpr int kDefaultDenseCap = 512;

  Objective(const LossModel& model, Batch batch,
            int dense_cap = kDefaultDenseCap)
      : model_(&model), batch_(std::move(batch)), dense_cap_(dense_cap) {}

  const Batch& batch() const { return batch_; }
  int dim() const { return model_->dim(); }

  double Value(const Eigen::VectorXd& w) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& w) const;
  // Fails when dim exceeds the dense cap.
  absl::StatusOr<Eigen::MatrixXd> Hessian(const Eigen::VectorXd& w) const;
  Eigen::VectorXd Hvp(const Eigen::VectorXd& w, const Eigen::VectorXd& v) const;

  absl::StatusOr<EvalResult> Eval(const Eigen::VectorXd& w, EvalOrder order,
                                  const Eigen::VectorXd* v = nullptr) const;

 private:
  const LossModel* model_;
  Batch batch_;
  int dense_cap_;
};

struct Sensitivities {
  double delta_f = 0.0;
  double delta_g = 0.0;
  double delta_h = 0.0;
};

absl::StatusOr<Sensitivities> ComputeSensitivities(const LossBounds& bounds,
                                                   int m, int d);

// Sufficient batch size for the mini-batch gradient and Hessian deviation bounds.
struct BatchSizeBound {
  double value = 0.0;
  int64_t ceiling = 0;
};
BatchSizeBound MinBatchSizeBound(const LossBounds& bounds,
                                 const AlgorithmConstants& k, int64_t T,
                                 double eta, int d);
int64_t MinBatchSize(const LossBounds& bounds, const AlgorithmConstants& k,
                     int64_t T, double eta, int d);

}  // namespace dp2s

#endif  // DP2S_OBJECTIVE_H_
