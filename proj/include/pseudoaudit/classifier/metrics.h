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

#ifndef PSEUDOAUDIT_CLASSIFIER_METRICS_H_
#define PSEUDOAUDIT_CLASSIFIER_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace pseudoaudit {

// Operating point reported for the fusing network.
inline constexpr double kDefaultThreshold = 0.7;

struct ConfusionMatrix {
  size_t true_positives = 0;   // pseudoscience predicted pseudoscience
  size_t false_positives = 0;  // other predicted pseudoscience
  size_t true_negatives = 0;
  size_t false_negatives = 0;

  size_t total() const {
    return true_positives + false_positives + true_negatives + false_negatives;
  }
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t support = 0;
};

// Headline precision/recall/f1 are support-weighted averages over the two
// classes. A per-class ratio with a zero denominator counts as 0.
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ClassMetrics pseudoscience;
  ClassMetrics other;
  ConfusionMatrix confusion;
};

// `truth` and `predicted` are parallel; true means pseudoscience.
Metrics ComputeMetrics(const std::vector<bool>& truth, const std::vector<bool>& predicted);

// Out-of-fold or held-out probability for one sample.
struct ScoredSample {
  size_t index = 0;
  double p_pseudo = 0.0;
  bool truth = false;
};

// Label rule: pseudoscience iff p_pseudo >= threshold.
Metrics MetricsAtThreshold(std::span<const ScoredSample> samples, double threshold);

// Grid {0, step, 2 step, ..., 1}; each point is rounded to 12 decimals so
// 14 * 0.05 is exactly 0.7.
std::vector<double> ThresholdGrid(double step);

// Grid threshold with the highest weighted F1; ties go to the larger
// threshold.
absl::StatusOr<double> ThresholdMoving(std::span<const ScoredSample> samples, double step);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_METRICS_H_
