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

#ifndef PSEUDOAUDIT_CORPUS_ANNOTATION_H_
#define PSEUDOAUDIT_CORPUS_ANNOTATION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pseudoaudit/corpus/video_record.h"

namespace pseudoaudit {

inline constexpr int kQualificationQuestions = 5;
inline constexpr int kQualificationPassMark = 3;
inline constexpr int kAnnotationsPerVideo = 3;

struct QualificationResult {
  std::string annotator_id;
  std::vector<bool> correct;
  bool passed = false;
};

// An annotator passes when at least 3 of the 5 test videos are labeled
// correctly.
absl::StatusOr<QualificationResult> QualificationGate(std::string annotator_id,
                                                      std::span<const bool> correct);

struct AggregationResult {
  std::vector<GroundTruthEntry> entries;  // ordered by video id
  std::vector<std::string> excluded;      // videos whose 3 labels are all distinct
};

// Majority vote over exactly three annotations per video. Videos where all
// three labels differ are excluded; the rest are collapsed to binary labels.
absl::StatusOr<AggregationResult> AggregateLabels(
    std::span<const AnnotationRecord> annotations);

// Items x categories count matrix. Row i holds, per category, how many
// raters put item i in that category.
using CountMatrix = std::vector<std::vector<int>>;

// Fleiss' kappa for a fixed number of raters per item. When every rating
// falls in one category, expected agreement is 1 and the result is 1.0.
absl::StatusOr<double> FleissKappa(const CountMatrix& counts, int raters_per_item);

// Builds the science/pseudoscience/irrelevant count matrix, one row per video
// in ascending id order. Videos listed in `skip` are left out.
absl::StatusOr<CountMatrix> AnnotationCountMatrix(
    std::span<const AnnotationRecord> annotations,
    std::span<const std::string> skip = {});

// Precision/recall/F1 of crowd labels against an expert, for the
// pseudoscience class. A metric is empty when its denominator is zero.
struct ExpertAgreement {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  int true_negatives = 0;
};

absl::StatusOr<ExpertAgreement> EvaluateAgainstExpert(
    const std::map<std::string, BinaryLabel>& crowd,
    const std::map<std::string, BinaryLabel>& expert);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CORPUS_ANNOTATION_H_
