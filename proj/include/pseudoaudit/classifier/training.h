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

#ifndef PSEUDOAUDIT_CLASSIFIER_TRAINING_H_
#define PSEUDOAUDIT_CLASSIFIER_TRAINING_H_

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/classifier/fusing_network.h"
#include "pseudoaudit/classifier/metrics.h"
#include "pseudoaudit/textfeat/features.h"

namespace pseudoaudit {

struct TrainConfig {
  double learning_rate = 1e-3;
  double adam_epsilon = 1e-8;
  int epochs = 50;
  int batch_size = 32;
  int folds = 10;
  uint64_t seed = 0;
  int smote_k = 5;
  bool use_smote = true;
  double threshold_step = 0.05;
  // Threshold at which ablation rows are reported.
  double threshold = kDefaultThreshold;
  bool train_final_model = true;
};

absl::Status ValidateTrainConfig(const TrainConfig& config);

struct LabeledSample {
  std::string id;
  BranchFeatures features;
  bool pseudoscience = false;
};

// Which of the four branches feed the network; a dropped branch contributes
// zeros in its 300-value slot.
using BranchMask = std::bitset<4>;
inline const BranchMask kAllBranches("1111");

// Concatenates the branches in kFeatureTypes order into a 1200-vector.
Eigen::VectorXd ConcatenateBranches(const BranchFeatures& features,
                                    BranchMask mask = kAllBranches);

// Mini-batch Adam on softmax cross-entropy with dropout. Columns of
// `inputs` are samples.
absl::StatusOr<FusingNetwork> TrainNetwork(const Eigen::MatrixXd& inputs,
                                           std::span<const int> labels,
                                           const TrainConfig& config, uint64_t seed);

struct FoldReport {
  std::vector<size_t> test_indices;
  std::vector<size_t> train_indices;  // original samples only
  size_t synthetic_count = 0;
  size_t train_pseudo_count = 0;  // after oversampling
  size_t train_other_count = 0;   // after oversampling
  Metrics metrics;                // test fold at threshold 0.5
};

struct TrainCvResult {
  std::vector<FoldReport> folds;
  // Out-of-fold probability of every sample, ordered by sample index.
  std::vector<ScoredSample> pooled;
  std::optional<FusingNetwork> final_model;
  size_t final_synthetic_count = 0;
};

// Stratified k-fold cross-validation. The minority class of each training
// split is oversampled with SMOTE up to the majority count; test folds are
// never oversampled. When `config.train_final_model` is set, a last model is
// trained on all samples the same way.
absl::StatusOr<TrainCvResult> TrainCrossValidated(std::span<const LabeledSample> samples,
                                                  const TrainConfig& config,
                                                  BranchMask mask = kAllBranches);

// Metrics of `network` on `samples` at `threshold`.
Metrics Evaluate(const FusingNetwork& network, std::span<const LabeledSample> samples,
                 double threshold);

struct AblationRow {
  BranchMask mask;
  std::string subset;  // e.g. "snippet+tags"
  Metrics metrics;     // pooled out-of-fold predictions at config.threshold
};

std::string SubsetName(BranchMask mask);

// Cross-validates every non-empty subset of the four branches: singles, then
// pairs, triples and the full set, each in branch order.
absl::StatusOr<std::vector<AblationRow>> Ablation(std::span<const LabeledSample> samples,
                                                  const TrainConfig& config);

// "subset,accuracy,precision,recall,f1" with one row per ablation subset.
std::string AblationCsv(std::span<const AblationRow> rows);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_TRAINING_H_
