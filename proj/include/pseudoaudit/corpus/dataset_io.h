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

#ifndef PSEUDOAUDIT_CORPUS_DATASET_IO_H_
#define PSEUDOAUDIT_CORPUS_DATASET_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "pseudoaudit/corpus/video_record.h"

namespace pseudoaudit {

// Dataset files hold one JSON object per line with exactly the VideoRecord
// field names. `views`, `likes`, `comment_count`, `tags`, `transcript` and
// `comments` may be omitted. Unknown fields are skipped and reported through
// `warnings` when it is non-null. Blank lines are ignored.
absl::StatusOr<std::vector<VideoRecord>> LoadDataset(
    const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

// Same as LoadDataset but over in-memory text; `source` names it in errors.
absl::StatusOr<std::vector<VideoRecord>> ParseDataset(
    std::string_view text, std::string_view source,
    std::vector<std::string>* warnings = nullptr);

absl::Status SaveDataset(const std::filesystem::path& path,
                         const std::vector<VideoRecord>& videos);

// Validates and converts one record. `unknown_fields` collects ignored keys.
absl::StatusOr<VideoRecord> VideoRecordFromJson(const nlohmann::json& j,
                                                std::vector<std::string>* unknown_fields);
nlohmann::ordered_json VideoRecordToJson(const VideoRecord& video);

// Annotation files: one {"video_id", "annotator_id", "label"} object per line.
absl::StatusOr<std::vector<AnnotationRecord>> LoadAnnotations(
    const std::filesystem::path& path);
absl::Status SaveAnnotations(const std::filesystem::path& path,
                             const std::vector<AnnotationRecord>& annotations);

// Ground-truth files: one {"video_id", "raw_majority", "label"} object per line.
absl::StatusOr<std::vector<GroundTruthEntry>> LoadGroundTruth(
    const std::filesystem::path& path);
absl::Status SaveGroundTruth(const std::filesystem::path& path,
                             const std::vector<GroundTruthEntry>& entries);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CORPUS_DATASET_IO_H_
