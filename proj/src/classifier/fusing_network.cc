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

#include "pseudoaudit/classifier/fusing_network.h"

#include <cmath>

#include "absl/status/status.h"

namespace pseudoaudit {
namespace {

// Column-wise softmax of a 2 x B logit matrix.
Eigen::MatrixXd SoftmaxColumns(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double m = logits.col(c).maxCoeff();
    out.col(c) = (logits.col(c).array() - m).exp();
    out.col(c) /= out.col(c).sum();
  }
  return out;
}

// Inverted-dropout mask: kept units are scaled by 1 / (1 - rate).
Eigen::MatrixXd DropoutMask(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const double keep_scale = 1.0 / (1.0 - FusingNetwork::kDropoutRate);
  Eigen::MatrixXd mask(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      mask(r, c) = rng.Uniform01() >= FusingNetwork::kDropoutRate ? keep_scale : 0.0;
    }
  }
  return mask;
}

}  // namespace

FusingNetwork::FusingNetwork() {
  for (int l = 0; l < kLayers; ++l) {
    layers_[l].weight = Eigen::MatrixXd::Zero(kLayerSizes[l + 1], kLayerSizes[l]);
    layers_[l].bias = Eigen::VectorXd::Zero(kLayerSizes[l + 1]);
  }
}

FusingNetwork FusingNetwork::HeUniform(uint64_t seed) {
  FusingNetwork net;
  Rng rng(DeriveKey(seed, "he-uniform"));
  for (int l = 0; l < kLayers; ++l) {
    const double limit = std::sqrt(6.0 / kLayerSizes[l]);
    Eigen::MatrixXd& w = net.layers_[l].weight;
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = rng.Uniform(-limit, limit);
    }
  }
  return net;
}

absl::StatusOr<std::array<double, 2>> FusingNetwork::Forward(const Eigen::VectorXd& x, Mode mode,
                                                            uint64_t dropout_seed) const {
  if (x.size() != kInputDim) {
    return absl::InvalidArgumentError("fusing network input must have 1200 values");
  }
  if (!x.allFinite()) return absl::InvalidArgumentError("non-finite fusing network input");
  Rng rng(dropout_seed);
  Eigen::VectorXd a = x;
  for (int l = 0; l < kLayers - 1; ++l) {
    a = (layers_[l].weight * a + layers_[l].bias).cwiseMax(0.0);
    if (mode == Mode::kTrain) a = a.cwiseProduct(DropoutMask(a.rows(), 1, rng));
  }
  const Eigen::MatrixXd probs =
      SoftmaxColumns(layers_[kLayers - 1].weight * a + layers_[kLayers - 1].bias);
  return std::array<double, 2>{probs(0, 0), probs(1, 0)};
}

Eigen::MatrixXd FusingNetwork::PredictBatch(const Eigen::MatrixXd& inputs) const {
  Eigen::MatrixXd a = inputs;
  for (int l = 0; l < kLayers - 1; ++l) {
    Eigen::MatrixXd z = layers_[l].weight * a;
    z.colwise() += layers_[l].bias;
    a = z.cwiseMax(0.0);
  }
  Eigen::MatrixXd logits = layers_[kLayers - 1].weight * a;
  logits.colwise() += layers_[kLayers - 1].bias;
  return SoftmaxColumns(logits);
}

double FusingNetwork::LossAndGradients(const Eigen::MatrixXd& inputs, std::span<const int> labels,
                                       Rng* dropout_rng, Gradients* gradients) const {
  const Eigen::Index batch = inputs.cols();
  std::array<Eigen::MatrixXd, kLayers + 1> activations;
  std::array<Eigen::MatrixXd, kLayers - 1> pre_activations;
  std::array<Eigen::MatrixXd, kLayers - 1> masks;
  activations[0] = inputs;
  for (int l = 0; l < kLayers - 1; ++l) {
    Eigen::MatrixXd z = layers_[l].weight * activations[l];
    z.colwise() += layers_[l].bias;
    Eigen::MatrixXd a = z.cwiseMax(0.0);
    if (dropout_rng != nullptr) {
      masks[l] = DropoutMask(a.rows(), a.cols(), *dropout_rng);
      a = a.cwiseProduct(masks[l]);
    }
    pre_activations[l] = std::move(z);
    activations[l + 1] = std::move(a);
  }
  Eigen::MatrixXd logits = layers_[kLayers - 1].weight * activations[kLayers - 1];
  logits.colwise() += layers_[kLayers - 1].bias;
  const Eigen::MatrixXd probs = SoftmaxColumns(logits);

  double loss = 0.0;
  Eigen::MatrixXd delta = probs;
  for (Eigen::Index c = 0; c < batch; ++c) {
    loss -= std::log(std::max(probs(labels[c], c), 1e-300));
    delta(labels[c], c) -= 1.0;
  }
  loss /= static_cast<double>(batch);
  if (gradients == nullptr) return loss;
  delta /= static_cast<double>(batch);

  for (int l = kLayers - 1; l >= 0; --l) {
    gradients->weight[l].noalias() = delta * activations[l].transpose();
    gradients->bias[l] = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = layers_[l].weight.transpose() * delta;
    const Eigen::MatrixXd& z = pre_activations[l - 1];
    upstream = upstream.cwiseProduct((z.array() > 0.0).cast<double>().matrix());
    if (dropout_rng != nullptr) upstream = upstream.cwiseProduct(masks[l - 1]);
    delta = std::move(upstream);
  }
  return loss;
}

AdamOptimizer::AdamOptimizer(double learning_rate, double beta1, double beta2, double epsilon)
    : learning_rate_(learning_rate), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

void AdamOptimizer::Step(const FusingNetwork::Gradients& gradients, FusingNetwork* network) {
  auto& layers = network->mutable_layers();
  if (!initialized_) {
    for (int l = 0; l < FusingNetwork::kLayers; ++l) {
      first_moment_.weight[l] = Eigen::MatrixXd::Zero(layers[l].weight.rows(), layers[l].weight.cols());
      second_moment_.weight[l] = first_moment_.weight[l];
      first_moment_.bias[l] = Eigen::VectorXd::Zero(layers[l].bias.size());
      second_moment_.bias[l] = first_moment_.bias[l];
    }
    initialized_ = true;
  }
  ++step_;
  const double correction1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
  const double step_size = learning_rate_ / correction1;
  const double sqrt_correction2 = std::sqrt(correction2);

  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    param.array() -=
        step_size * m.array() / ((v.array().sqrt() / sqrt_correction2) + epsilon_);
  };
  for (int l = 0; l < FusingNetwork::kLayers; ++l) {
    update(layers[l].weight, first_moment_.weight[l], second_moment_.weight[l],
           gradients.weight[l]);
    update(layers[l].bias, first_moment_.bias[l], second_moment_.bias[l], gradients.bias[l]);
  }
}

}  // namespace pseudoaudit
