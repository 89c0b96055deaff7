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

#include "pseudoaudit/classifier/prediction.h"

#include <fstream>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pseudoaudit/classifier/training.h"

namespace pseudoaudit {

Prediction ClassifyVideo(const EmbeddingSet& models, const FusingNetwork& network,
                         const VideoRecord& video, double threshold) {
  const Eigen::MatrixXd x = ConcatenateBranches(ExtractFeatures(models, video));
  const Eigen::MatrixXd probs = network.PredictBatch(x);
  Prediction p;
  p.video_id = video.id;
  p.p_pseudo = probs(1, 0);
  p.pseudoscience = p.p_pseudo >= threshold;
  return p;
}

absl::StatusOr<ReviewVerdict> ParseReviewVerdict(std::string_view name) {
  if (name == "confirm") return ReviewVerdict::kConfirm;
  if (name == "reject") return ReviewVerdict::kReject;
  return absl::InvalidArgumentError(absl::StrCat("unknown review verdict '", std::string(name), "'"));
}

absl::StatusOr<std::vector<ReviewOverride>> LoadReviewOverrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::vector<ReviewOverride> out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = [&] { return absl::StrCat(path.string(), ":", line_no, ": "); };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      return absl::InvalidArgumentError(absl::StrCat(where(), "malformed record"));
    }
    if (!j.contains("video_id") || !j["video_id"].is_string() || !j.contains("verdict") ||
        !j["verdict"].is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where(), "expected string fields video_id and verdict"));
    }
    auto verdict = ParseReviewVerdict(j["verdict"].get<std::string>());
    if (!verdict.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(where(), verdict.status().message()));
    }
    out.push_back({j["video_id"].get<std::string>(), *verdict});
  }
  return out;
}

absl::StatusOr<std::vector<Prediction>> ApplyReviewOverrides(
    std::vector<Prediction> predictions, std::span<const ReviewOverride> overrides) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < predictions.size(); ++i) index.emplace(predictions[i].video_id, i);
  for (const ReviewOverride& o : overrides) {
    auto it = index.find(o.video_id);
    if (it == index.end()) {
      return absl::NotFoundError(absl::StrCat("override for unknown video '", o.video_id, "'"));
    }
    if (o.verdict == ReviewVerdict::kReject) predictions[it->second].pseudoscience = false;
  }
  return predictions;
}

}  // namespace pseudoaudit
