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

#include "pseudoaudit/classifier/training.h"

#include <algorithm>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "pseudoaudit/classifier/folds.h"
#include "pseudoaudit/classifier/smote.h"
#include "pseudoaudit/util/random.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

Eigen::MatrixXd BuildInputs(std::span<const LabeledSample> samples, BranchMask mask) {
  Eigen::MatrixXd x(FusingNetwork::kInputDim, static_cast<Eigen::Index>(samples.size()));
  for (size_t i = 0; i < samples.size(); ++i) {
    x.col(static_cast<Eigen::Index>(i)) = ConcatenateBranches(samples[i].features, mask);
  }
  return x;
}

struct TrainingSet {
  Eigen::MatrixXd inputs;
  std::vector<int> labels;
  size_t synthetic = 0;
};

// Appends SMOTE points for the smaller class until both classes are equal.
absl::StatusOr<TrainingSet> Oversample(Eigen::MatrixXd inputs, std::vector<int> labels,
                                       const TrainConfig& config, uint64_t seed) {
  TrainingSet out;
  const auto pseudo = static_cast<Eigen::Index>(std::count(labels.begin(), labels.end(), 1));
  const auto other = static_cast<Eigen::Index>(labels.size()) - pseudo;
  if (!config.use_smote || pseudo == other || pseudo == 0 || other == 0) {
    out.inputs = std::move(inputs);
    out.labels = std::move(labels);
    return out;
  }
  const int minority_label = pseudo < other ? 1 : 0;
  const Eigen::Index majority = std::max(pseudo, other);
  std::vector<Eigen::Index> members;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == minority_label) members.push_back(static_cast<Eigen::Index>(i));
  }
  const Eigen::MatrixXd minority = inputs(Eigen::all, members);
  PA_ASSIGN_OR_RETURN(Eigen::MatrixXd synthetic,
                      Smote(minority, config.smote_k, majority, seed));
  out.synthetic = static_cast<size_t>(synthetic.cols());
  out.inputs.resize(inputs.rows(), inputs.cols() + synthetic.cols());
  out.inputs << inputs, synthetic;
  out.labels = std::move(labels);
  out.labels.insert(out.labels.end(), out.synthetic, minority_label);
  return out;
}

}  // namespace

absl::Status ValidateTrainConfig(const TrainConfig& config) {
  if (!(config.learning_rate > 0.0)) return absl::InvalidArgumentError("learning_rate must be > 0");
  if (!(config.adam_epsilon > 0.0)) return absl::InvalidArgumentError("adam_epsilon must be > 0");
  if (config.epochs < 1) return absl::InvalidArgumentError("epochs must be >= 1");
  if (config.batch_size < 1) return absl::InvalidArgumentError("batch_size must be >= 1");
  if (config.folds < 2) return absl::InvalidArgumentError("folds must be >= 2");
  if (config.smote_k < 1) return absl::InvalidArgumentError("smote_k must be >= 1");
  if (!(config.threshold_step > 0.0 && config.threshold_step < 1.0)) {
    return absl::InvalidArgumentError("threshold_step must be in (0, 1)");
  }
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    return absl::InvalidArgumentError("threshold must be in [0, 1]");
  }
  return absl::OkStatus();
}

Eigen::VectorXd ConcatenateBranches(const BranchFeatures& features, BranchMask mask) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(FusingNetwork::kInputDim);
  for (size_t b = 0; b < features.size(); ++b) {
    if (!mask.test(b)) continue;
    for (int d = 0; d < kEmbeddingDim; ++d) {
      x(static_cast<Eigen::Index>(b) * kEmbeddingDim + d) = features[b][d];
    }
  }
  return x;
}

absl::StatusOr<FusingNetwork> TrainNetwork(const Eigen::MatrixXd& inputs,
                                           std::span<const int> labels,
                                           const TrainConfig& config, uint64_t seed) {
  PA_RETURN_IF_ERROR(ValidateTrainConfig(config));
  if (inputs.rows() != FusingNetwork::kInputDim) {
    return absl::InvalidArgumentError("training inputs must have 1200 rows");
  }
  if (inputs.cols() == 0) return absl::InvalidArgumentError("no training samples");
  if (static_cast<size_t>(inputs.cols()) != labels.size()) {
    return absl::InvalidArgumentError("one label per training column required");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) return absl::InvalidArgumentError("labels must be 0 or 1");
  }
  if (!inputs.allFinite()) return absl::InvalidArgumentError("non-finite training input");

  FusingNetwork net = FusingNetwork::HeUniform(DeriveKey(seed, "init"));
  AdamOptimizer adam(config.learning_rate, 0.9, 0.999, config.adam_epsilon);
  Rng order_rng(DeriveKey(seed, "batches"));
  Rng dropout_rng(DeriveKey(seed, "dropout"));
  std::vector<Eigen::Index> order(static_cast<size_t>(inputs.cols()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  FusingNetwork::Gradients grads;
  std::vector<int> batch_labels;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.Shuffle(std::span<Eigen::Index>(order));
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      std::span<const Eigen::Index> batch(order.data() + start, end - start);
      batch_labels.clear();
      for (Eigen::Index i : batch) batch_labels.push_back(labels[i]);
      const Eigen::MatrixXd x = inputs(Eigen::all, std::vector<Eigen::Index>(batch.begin(), batch.end()));
      net.LossAndGradients(x, batch_labels, &dropout_rng, &grads);
      adam.Step(grads, &net);
    }
  }
  return net;
}

absl::StatusOr<TrainCvResult> TrainCrossValidated(std::span<const LabeledSample> samples,
                                                  const TrainConfig& config, BranchMask mask) {
  PA_RETURN_IF_ERROR(ValidateTrainConfig(config));
  std::vector<int> labels;
  labels.reserve(samples.size());
  for (const LabeledSample& s : samples) labels.push_back(s.pseudoscience ? 1 : 0);
  if (std::count(labels.begin(), labels.end(), 1) == 0 ||
      std::count(labels.begin(), labels.end(), 0) == 0) {
    return absl::InvalidArgumentError("training data must contain both classes");
  }
  PA_ASSIGN_OR_RETURN(auto folds, StratifiedFolds(labels, config.folds, config.seed));
  const Eigen::MatrixXd all_inputs = BuildInputs(samples, mask);

  TrainCvResult result;
  result.pooled.resize(samples.size());
  for (size_t f = 0; f < folds.size(); ++f) {
    FoldReport report;
    report.test_indices = folds[f];
    std::vector<bool> in_test(samples.size(), false);
    for (size_t i : folds[f]) in_test[i] = true;
    for (size_t i = 0; i < samples.size(); ++i) {
      if (!in_test[i]) report.train_indices.push_back(i);
    }
    const std::vector<Eigen::Index> train_cols(report.train_indices.begin(),
                                               report.train_indices.end());
    std::vector<int> train_labels;
    for (size_t i : report.train_indices) train_labels.push_back(labels[i]);
    PA_ASSIGN_OR_RETURN(
        TrainingSet train,
        Oversample(all_inputs(Eigen::all, train_cols), std::move(train_labels), config,
                   DeriveKey(config.seed, "smote", static_cast<uint64_t>(f))));
    report.synthetic_count = train.synthetic;
    report.train_pseudo_count =
        static_cast<size_t>(std::count(train.labels.begin(), train.labels.end(), 1));
    report.train_other_count = train.labels.size() - report.train_pseudo_count;
    PA_ASSIGN_OR_RETURN(FusingNetwork net,
                        TrainNetwork(train.inputs, train.labels, config,
                                     DeriveKey(config.seed, "fold", static_cast<uint64_t>(f))));

    const std::vector<Eigen::Index> test_cols(folds[f].begin(), folds[f].end());
    const Eigen::MatrixXd probs = net.PredictBatch(all_inputs(Eigen::all, test_cols));
    std::vector<ScoredSample> fold_scores;
    for (size_t j = 0; j < folds[f].size(); ++j) {
      const size_t i = folds[f][j];
      ScoredSample s{i, probs(1, static_cast<Eigen::Index>(j)), labels[i] == 1};
      result.pooled[i] = s;
      fold_scores.push_back(s);
    }
    report.metrics = MetricsAtThreshold(fold_scores, 0.5);
    result.folds.push_back(std::move(report));
  }

  if (config.train_final_model) {
    PA_ASSIGN_OR_RETURN(TrainingSet train,
                        Oversample(all_inputs, labels, config, DeriveKey(config.seed, "smote-final")));
    result.final_synthetic_count = train.synthetic;
    PA_ASSIGN_OR_RETURN(FusingNetwork net, TrainNetwork(train.inputs, train.labels, config,
                                                        DeriveKey(config.seed, "final")));
    result.final_model = std::move(net);
  }
  return result;
}

Metrics Evaluate(const FusingNetwork& network, std::span<const LabeledSample> samples,
                 double threshold) {
  const Eigen::MatrixXd probs = network.PredictBatch(BuildInputs(samples, kAllBranches));
  std::vector<ScoredSample> scored;
  for (size_t i = 0; i < samples.size(); ++i) {
    scored.push_back({i, probs(1, static_cast<Eigen::Index>(i)), samples[i].pseudoscience});
  }
  return MetricsAtThreshold(scored, threshold);
}

std::string SubsetName(BranchMask mask) {
  std::vector<std::string> names;
  for (size_t b = 0; b < kFeatureTypes.size(); ++b) {
    if (mask.test(b)) names.emplace_back(FeatureTypeName(kFeatureTypes[b]));
  }
  return absl::StrJoin(names, "+");
}

absl::StatusOr<std::vector<AblationRow>> Ablation(std::span<const LabeledSample> samples,
                                                  const TrainConfig& config) {
  std::vector<std::vector<size_t>> subsets;
  for (unsigned bits = 1; bits < 16; ++bits) {
    std::vector<size_t> members;
    for (size_t b = 0; b < 4; ++b) {
      if (bits & (1u << b)) members.push_back(b);
    }
    subsets.push_back(members);
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  TrainConfig cv_config = config;
  cv_config.train_final_model = false;
  std::vector<AblationRow> rows;
  for (const auto& members : subsets) {
    BranchMask mask;
    for (size_t b : members) mask.set(b);
    PA_ASSIGN_OR_RETURN(TrainCvResult cv, TrainCrossValidated(samples, cv_config, mask));
    rows.push_back({mask, SubsetName(mask), MetricsAtThreshold(cv.pooled, config.threshold)});
  }
  return rows;
}

std::string AblationCsv(std::span<const AblationRow> rows) {
  std::string out = "subset,accuracy,precision,recall,f1\n";
  for (const AblationRow& row : rows) {
    absl::StrAppend(&out, absl::StrFormat("%s,%.6f,%.6f,%.6f,%.6f\n", row.subset,
                                          row.metrics.accuracy, row.metrics.precision,
                                          row.metrics.recall, row.metrics.f1));
  }
  return out;
}

}  // namespace pseudoaudit
