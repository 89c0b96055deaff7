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

#include "pseudoaudit/corpus/annotation.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace pseudoaudit {
namespace {

int LabelIndex(RawLabel label) { return static_cast<int>(label); }

std::map<std::string, std::vector<RawLabel>> GroupByVideo(
    std::span<const AnnotationRecord> annotations) {
  std::map<std::string, std::vector<RawLabel>> by_video;
  for (const auto& a : annotations) by_video[a.video_id].push_back(a.label);
  return by_video;
}

}  // namespace

absl::StatusOr<QualificationResult> QualificationGate(std::string annotator_id,
                                                      std::span<const bool> correct) {
  if (correct.size() != kQualificationQuestions) {
    return absl::InvalidArgumentError(absl::StrCat("qualification needs ",
                                                   kQualificationQuestions,
                                                   " answers, got ", correct.size()));
  }
  QualificationResult result;
  result.annotator_id = std::move(annotator_id);
  result.correct.assign(correct.begin(), correct.end());
  result.passed = std::count(correct.begin(), correct.end(), true) >= kQualificationPassMark;
  return result;
}

absl::StatusOr<AggregationResult> AggregateLabels(
    std::span<const AnnotationRecord> annotations) {
  AggregationResult result;
  for (const auto& [video_id, labels] : GroupByVideo(annotations)) {
    if (labels.size() != kAnnotationsPerVideo) {
      return absl::InvalidArgumentError(absl::StrCat("video ", video_id, " has ",
                                                     labels.size(), " annotations, expected ",
                                                     kAnnotationsPerVideo));
    }
    std::array<int, 3> votes{};
    for (RawLabel l : labels) ++votes[LabelIndex(l)];
    const auto top = std::max_element(votes.begin(), votes.end());
    if (*top < 2) {
      result.excluded.push_back(video_id);
      continue;
    }
    GroundTruthEntry entry;
    entry.video_id = video_id;
    entry.raw_majority = static_cast<RawLabel>(top - votes.begin());
    entry.label = CollapseLabel(entry.raw_majority);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

absl::StatusOr<double> FleissKappa(const CountMatrix& counts, int raters_per_item) {
  if (raters_per_item < 2) {
    return absl::InvalidArgumentError("Fleiss' kappa needs at least 2 raters per item");
  }
  if (counts.empty()) return absl::InvalidArgumentError("Fleiss' kappa needs at least 1 item");
  const size_t categories = counts.front().size();
  const double n = raters_per_item;
  const double items = static_cast<double>(counts.size());

  std::vector<double> category_totals(categories, 0.0);
  double observed_sum = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const auto& row = counts[i];
    if (row.size() != categories) {
      return absl::InvalidArgumentError(absl::StrCat("row ", i, " has ", row.size(),
                                                     " categories, expected ", categories));
    }
    int row_sum = 0;
    double squares = 0.0;
    for (size_t j = 0; j < categories; ++j) {
      if (row[j] < 0) return absl::InvalidArgumentError(absl::StrCat("negative count in row ", i));
      row_sum += row[j];
      squares += static_cast<double>(row[j]) * row[j];
      category_totals[j] += row[j];
    }
    if (row_sum != raters_per_item) {
      return absl::InvalidArgumentError(absl::StrCat("row ", i, " sums to ", row_sum,
                                                     ", expected ", raters_per_item));
    }
    observed_sum += (squares - n) / (n * (n - 1.0));
  }
  const double observed = observed_sum / items;
  double expected = 0.0;
  for (double total : category_totals) {
    const double p = total / (items * n);
    expected += p * p;
  }
  if (std::abs(1.0 - expected) < 1e-15) {
    if (std::abs(1.0 - observed) < 1e-12) return 1.0;
    return absl::FailedPreconditionError("Fleiss' kappa undefined: expected agreement is 1");
  }
  return (observed - expected) / (1.0 - expected);
}

absl::StatusOr<CountMatrix> AnnotationCountMatrix(std::span<const AnnotationRecord> annotations,
                                                  std::span<const std::string> skip) {
  const std::set<std::string> skipped(skip.begin(), skip.end());
  CountMatrix counts;
  for (const auto& [video_id, labels] : GroupByVideo(annotations)) {
    if (skipped.contains(video_id)) continue;
    if (labels.size() != kAnnotationsPerVideo) {
      return absl::InvalidArgumentError(absl::StrCat("video ", video_id, " has ",
                                                     labels.size(), " annotations"));
    }
    std::vector<int> row(3, 0);
    for (RawLabel l : labels) ++row[LabelIndex(l)];
    counts.push_back(std::move(row));
  }
  return counts;
}

absl::StatusOr<ExpertAgreement> EvaluateAgainstExpert(
    const std::map<std::string, BinaryLabel>& crowd,
    const std::map<std::string, BinaryLabel>& expert) {
  if (crowd.size() != expert.size()) {
    return absl::InvalidArgumentError(absl::StrCat("crowd has ", crowd.size(),
                                                   " videos, expert has ", expert.size()));
  }
  ExpertAgreement out;
  for (const auto& [id, crowd_label] : crowd) {
    auto it = expert.find(id);
    if (it == expert.end()) {
      return absl::InvalidArgumentError(absl::StrCat("video ", id, " has no expert label"));
    }
    const bool predicted = crowd_label == BinaryLabel::kPseudoscience;
    const bool actual = it->second == BinaryLabel::kPseudoscience;
    if (predicted && actual) ++out.true_positives;
    if (predicted && !actual) ++out.false_positives;
    if (!predicted && actual) ++out.false_negatives;
    if (!predicted && !actual) ++out.true_negatives;
  }
  const int predicted_positive = out.true_positives + out.false_positives;
  const int actual_positive = out.true_positives + out.false_negatives;
  if (predicted_positive > 0) {
    out.precision = static_cast<double>(out.true_positives) / predicted_positive;
  }
  if (actual_positive > 0) {
    out.recall = static_cast<double>(out.true_positives) / actual_positive;
  }
  if (out.precision && out.recall && (*out.precision + *out.recall) > 0.0) {
    out.f1 = 2.0 * *out.precision * *out.recall / (*out.precision + *out.recall);
  }
  return out;
}

}  // namespace pseudoaudit
