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

#ifndef PSEUDOAUDIT_CORPUS_VIDEO_RECORD_H_
#define PSEUDOAUDIT_CORPUS_VIDEO_RECORD_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace pseudoaudit {

enum class Topic { kCovid19, kAntiVaccination, kAntiMask, kFlatEarth, kNone };

// The four topics that have search queries and walk experiments.
inline constexpr std::array<Topic, 4> kAuditedTopics = {
    Topic::kCovid19, Topic::kAntiVaccination, Topic::kAntiMask, Topic::kFlatEarth};

std::string_view TopicName(Topic topic);
absl::StatusOr<Topic> ParseTopic(std::string_view name);

// Crowd label as assigned by a single annotator.
enum class RawLabel { kScience, kPseudoscience, kIrrelevant };

std::string_view RawLabelName(RawLabel label);
absl::StatusOr<RawLabel> ParseRawLabel(std::string_view name);

// Binary label after science and irrelevant are collapsed into "other".
enum class BinaryLabel { kOther, kPseudoscience };

std::string_view BinaryLabelName(BinaryLabel label);
absl::StatusOr<BinaryLabel> ParseBinaryLabel(std::string_view name);

inline constexpr size_t kMaxComments = 200;

struct VideoRecord {
  std::string id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  std::string transcript;
  std::vector<std::string> comments;
  uint64_t views = 0;
  uint64_t likes = 0;
  uint64_t comment_count = 0;
  uint32_t duration_s = 1;
  Topic topic = Topic::kNone;

  bool operator==(const VideoRecord&) const = default;
};

struct AnnotationRecord {
  std::string video_id;
  std::string annotator_id;
  RawLabel label = RawLabel::kIrrelevant;
};

struct GroundTruthEntry {
  std::string video_id;
  RawLabel raw_majority = RawLabel::kIrrelevant;
  BinaryLabel label = BinaryLabel::kOther;

  bool operator==(const GroundTruthEntry&) const = default;
};

inline BinaryLabel CollapseLabel(RawLabel raw) {
  return raw == RawLabel::kPseudoscience ? BinaryLabel::kPseudoscience
                                         : BinaryLabel::kOther;
}

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CORPUS_VIDEO_RECORD_H_
