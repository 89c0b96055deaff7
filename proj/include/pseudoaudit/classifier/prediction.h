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

#ifndef PSEUDOAUDIT_CLASSIFIER_PREDICTION_H_
#define PSEUDOAUDIT_CLASSIFIER_PREDICTION_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pseudoaudit/classifier/fusing_network.h"
#include "pseudoaudit/classifier/metrics.h"
#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/textfeat/features.h"

namespace pseudoaudit {

struct Prediction {
  std::string video_id;
  double p_pseudo = 0.0;
  bool pseudoscience = false;  // p_pseudo >= threshold
};

// Embeds the four branches, concatenates them in branch order and runs an
// infer-mode forward pass.
Prediction ClassifyVideo(const EmbeddingSet& models, const FusingNetwork& network,
                         const VideoRecord& video, double threshold = kDefaultThreshold);

enum class ReviewVerdict { kConfirm, kReject };

absl::StatusOr<ReviewVerdict> ParseReviewVerdict(std::string_view name);

struct ReviewOverride {
  std::string video_id;
  ReviewVerdict verdict = ReviewVerdict::kConfirm;
};

// Line-delimited {"video_id": ..., "verdict": "confirm"|"reject"}.
absl::StatusOr<std::vector<ReviewOverride>> LoadReviewOverrides(const std::filesystem::path& path);

// Manual review of positives: a rejected video becomes other, a confirmed one
// keeps its label. Fails on an id that has no prediction.
absl::StatusOr<std::vector<Prediction>> ApplyReviewOverrides(
    std::vector<Prediction> predictions, std::span<const ReviewOverride> overrides);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_PREDICTION_H_
