// Copyright 2026 The Pseudoaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSEUDOAUDIT_CLASSIFIER_FUSING_NETWORK_H_
#define PSEUDOAUDIT_CLASSIFIER_FUSING_NETWORK_H_

#include <array>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "pseudoaudit/util/random.h"

namespace pseudoaudit {

// Dense 1200 -> 256 -> 128 -> 64 -> 32 -> 2 network over the concatenated
// branch embeddings. Hidden layers use ReLU followed by dropout (training
// only, inverted scaling); the output is a two-way softmax where index 1 is
// the pseudoscience probability.
class FusingNetwork {
 public:
  static constexpr std::array<int, 6> kLayerSizes = {1200, 256, 128, 64, 32, 2};
  static constexpr int kLayers = 5;
  static constexpr int kInputDim = kLayerSizes[0];
  static constexpr double kDropoutRate = 0.5;

  enum class Mode { kTrain, kInfer };

  struct Layer {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;
  };

  struct Gradients {
    std::array<Eigen::MatrixXd, kLayers> weight;
    std::array<Eigen::VectorXd, kLayers> bias;
  };

  // All weights and biases zero.
  FusingNetwork();

  // He-uniform weights (limit sqrt(6 / fan_in)) and zero biases.
  static FusingNetwork HeUniform(uint64_t seed);

  // Single-sample forward pass. In train mode dropout masks are drawn from
  // `dropout_seed`; infer mode is deterministic and ignores it.
  absl::StatusOr<std::array<double, 2>> Forward(const Eigen::VectorXd& x, Mode mode,
                                               uint64_t dropout_seed = 0) const;

  // Infer-mode probabilities for a 1200 x B batch; returns 2 x B.
  Eigen::MatrixXd PredictBatch(const Eigen::MatrixXd& inputs) const;

  // Mean softmax cross-entropy over the batch columns and its gradient with
  // respect to every weight and bias. Dropout is applied when `dropout_rng`
  // is non-null. `labels` holds 0 (other) or 1 (pseudoscience) per column.
  double LossAndGradients(const Eigen::MatrixXd& inputs, std::span<const int> labels,
                          Rng* dropout_rng, Gradients* gradients) const;

  const std::array<Layer, kLayers>& layers() const { return layers_; }
  std::array<Layer, kLayers>& mutable_layers() { return layers_; }

 private:
  std::array<Layer, kLayers> layers_;
};

// Adam with bias-corrected moments.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(double learning_rate = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                         double epsilon = 1e-8);

  void Step(const FusingNetwork::Gradients& gradients, FusingNetwork* network);

 private:
  double learning_rate_;
  double beta1_;
  double beta2_;
  double epsilon_;
  int64_t step_ = 0;
  bool initialized_ = false;
  FusingNetwork::Gradients first_moment_;
  FusingNetwork::Gradients second_moment_;
};

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_FUSING_NETWORK_H_
