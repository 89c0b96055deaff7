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

#ifndef PSEUDOAUDIT_CLASSIFIER_MODEL_IO_H_
#define PSEUDOAUDIT_CLASSIFIER_MODEL_IO_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/classifier/fusing_network.h"
#include "pseudoaudit/classifier/metrics.h"

namespace pseudoaudit {

// A trained fusing network, its operating threshold and the ids of the four
// embedding models (branch order) it was trained on.
struct ClassifierModel {
  FusingNetwork network;
  double threshold = kDefaultThreshold;
  std::array<std::string, 4> embedding_ids;
};

// Weights are stored as 32-bit floats, so a round trip rounds them once;
// RoundWeightsToFloat applies the same rounding in memory.
std::string SerializeClassifier(const ClassifierModel& model);
absl::StatusOr<ClassifierModel> DeserializeClassifier(std::string_view bytes);
void RoundWeightsToFloat(FusingNetwork* network);

absl::Status SaveClassifier(const ClassifierModel& model, const std::filesystem::path& path);
absl::StatusOr<ClassifierModel> LoadClassifier(const std::filesystem::path& path);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_MODEL_IO_H_
