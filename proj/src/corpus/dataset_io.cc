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

#include "pseudoaudit/corpus/dataset_io.h"

#include <set>
#include <string_view>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

using nlohmann::json;

const std::set<std::string_view>& KnownVideoFields() {
  static const auto* fields = new std::set<std::string_view>{
      "id", "title", "description", "tags", "transcript", "comments",
      "views", "likes", "comment_count", "duration_s", "topic"};
  return *fields;
}

absl::StatusOr<std::string> RequiredString(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return absl::InvalidArgumentError(absl::StrCat("missing field '", key, "'"));
  if (!it->is_string()) {
    return absl::InvalidArgumentError(absl::StrCat("field '", key, "' must be a string"));
  }
  return it->get<std::string>();
}

absl::StatusOr<std::string> OptionalString(const json& j, const char* key) {
  if (!j.contains(key)) return std::string();
  return RequiredString(j, key);
}

absl::StatusOr<std::vector<std::string>> OptionalStringList(const json& j, const char* key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) {
    return absl::InvalidArgumentError(absl::StrCat("field '", key, "' must be an array"));
  }
  for (const auto& item : *it) {
    if (!item.is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("field '", key, "' must contain only strings"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

absl::StatusOr<uint64_t> OptionalCount(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return uint64_t{0};
  if (it->is_number_unsigned()) return it->get<uint64_t>();
  if (it->is_number_integer()) {
    return absl::InvalidArgumentError(absl::StrCat("negative count in '", key, "'"));
  }
  return absl::InvalidArgumentError(
      absl::StrCat("field '", key, "' must be a non-negative integer"));
}

// Splits on '\n' and hands each non-blank line to `fn(line, line_number)`.
template <typename Fn>
absl::Status ForEachLine(std::string_view text, std::string_view source, Fn fn) {
  size_t line_number = 0;
  const std::string where(source);
  for (absl::string_view line : absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == absl::string_view::npos) continue;
    json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ":", line_number, ": malformed record"));
    }
    absl::Status status = fn(j, line_number);
    if (!status.ok()) {
      return absl::Status(status.code(), absl::StrCat(where, ":", line_number, ": ",
                                                      status.message()));
    }
  }
  return absl::OkStatus();
}

template <typename T, typename ToJson>
absl::Status WriteLines(const std::filesystem::path& path, const std::vector<T>& items,
                        ToJson to_json) {
  std::string out;
  for (const T& item : items) {
    out += to_json(item).dump();
    out += '\n';
  }
  return WriteFileBytes(path, out);
}

}  // namespace

absl::StatusOr<VideoRecord> VideoRecordFromJson(const json& j,
                                                std::vector<std::string>* unknown_fields) {
  VideoRecord v;
  PA_ASSIGN_OR_RETURN(v.id, RequiredString(j, "id"));
  if (v.id.empty()) return absl::InvalidArgumentError("empty id");
  PA_ASSIGN_OR_RETURN(v.title, RequiredString(j, "title"));
  PA_ASSIGN_OR_RETURN(v.description, RequiredString(j, "description"));
  PA_ASSIGN_OR_RETURN(v.tags, OptionalStringList(j, "tags"));
  PA_ASSIGN_OR_RETURN(v.transcript, OptionalString(j, "transcript"));
  PA_ASSIGN_OR_RETURN(v.comments, OptionalStringList(j, "comments"));
  if (v.comments.size() > kMaxComments) {
    return absl::InvalidArgumentError(
        absl::StrCat("video ", v.id, " has ", v.comments.size(), " comments (max ",
                     kMaxComments, ")"));
  }
  PA_ASSIGN_OR_RETURN(v.views, OptionalCount(j, "views"));
  PA_ASSIGN_OR_RETURN(v.likes, OptionalCount(j, "likes"));
  PA_ASSIGN_OR_RETURN(v.comment_count, OptionalCount(j, "comment_count"));

  auto duration = j.find("duration_s");
  if (duration == j.end()) return absl::InvalidArgumentError("missing field 'duration_s'");
  if (!duration->is_number_integer() || duration->get<int64_t>() <= 0 ||
      duration->get<int64_t>() > UINT32_MAX) {
    return absl::InvalidArgumentError("field 'duration_s' must be a positive integer");
  }
  v.duration_s = static_cast<uint32_t>(duration->get<int64_t>());

  PA_ASSIGN_OR_RETURN(std::string topic, RequiredString(j, "topic"));
  PA_ASSIGN_OR_RETURN(v.topic, ParseTopic(topic));

  if (unknown_fields != nullptr) {
    for (const auto& [key, value] : j.items()) {
      if (!KnownVideoFields().contains(key)) unknown_fields->push_back(key);
    }
  }
  return v;
}

nlohmann::ordered_json VideoRecordToJson(const VideoRecord& v) {
  nlohmann::ordered_json j;
  j["id"] = v.id;
  j["title"] = v.title;
  j["description"] = v.description;
  j["tags"] = v.tags;
  j["transcript"] = v.transcript;
  j["comments"] = v.comments;
  j["views"] = v.views;
  j["likes"] = v.likes;
  j["comment_count"] = v.comment_count;
  j["duration_s"] = v.duration_s;
  j["topic"] = std::string(TopicName(v.topic));
  return j;
}

absl::StatusOr<std::vector<VideoRecord>> ParseDataset(std::string_view text,
                                                      std::string_view source,
                                                      std::vector<std::string>* warnings) {
  std::vector<VideoRecord> videos;
  std::unordered_set<std::string> seen;
  PA_RETURN_IF_ERROR(ForEachLine(text, source, [&](const json& j, size_t line) -> absl::Status {
    std::vector<std::string> unknown;
    PA_ASSIGN_OR_RETURN(VideoRecord v, VideoRecordFromJson(j, &unknown));
    if (!seen.insert(v.id).second) {
      return absl::AlreadyExistsError(absl::StrCat("duplicate id '", v.id, "'"));
    }
    if (warnings != nullptr) {
      for (const auto& key : unknown) {
        warnings->push_back(
            absl::StrCat(std::string(source), ":", line, ": ignoring unknown field '", key, "'"));
      }
    }
    videos.push_back(std::move(v));
    return absl::OkStatus();
  }));
  return videos;
}

absl::StatusOr<std::vector<VideoRecord>> LoadDataset(const std::filesystem::path& path,
                                                     std::vector<std::string>* warnings) {
  PA_ASSIGN_OR_RETURN(std::string text, ReadFileBytes(path));
  return ParseDataset(text, path.string(), warnings);
}

absl::Status SaveDataset(const std::filesystem::path& path,
                         const std::vector<VideoRecord>& videos) {
  return WriteLines(path, videos, VideoRecordToJson);
}

absl::StatusOr<std::vector<AnnotationRecord>> LoadAnnotations(
    const std::filesystem::path& path) {
  PA_ASSIGN_OR_RETURN(std::string text, ReadFileBytes(path));
  std::vector<AnnotationRecord> out;
  PA_RETURN_IF_ERROR(ForEachLine(text, path.string(), [&](const json& j, size_t) -> absl::Status {
    AnnotationRecord a;
    PA_ASSIGN_OR_RETURN(a.video_id, RequiredString(j, "video_id"));
    PA_ASSIGN_OR_RETURN(a.annotator_id, RequiredString(j, "annotator_id"));
    PA_ASSIGN_OR_RETURN(std::string label, RequiredString(j, "label"));
    PA_ASSIGN_OR_RETURN(a.label, ParseRawLabel(label));
    out.push_back(std::move(a));
    return absl::OkStatus();
  }));
  return out;
}

absl::Status SaveAnnotations(const std::filesystem::path& path,
                             const std::vector<AnnotationRecord>& annotations) {
  return WriteLines(path, annotations, [](const AnnotationRecord& a) {
    nlohmann::ordered_json j;
    j["video_id"] = a.video_id;
    j["annotator_id"] = a.annotator_id;
    j["label"] = std::string(RawLabelName(a.label));
    return j;
  });
}

absl::StatusOr<std::vector<GroundTruthEntry>> LoadGroundTruth(
    const std::filesystem::path& path) {
  PA_ASSIGN_OR_RETURN(std::string text, ReadFileBytes(path));
  std::vector<GroundTruthEntry> out;
  PA_RETURN_IF_ERROR(ForEachLine(text, path.string(), [&](const json& j, size_t) -> absl::Status {
    GroundTruthEntry e;
    PA_ASSIGN_OR_RETURN(e.video_id, RequiredString(j, "video_id"));
    PA_ASSIGN_OR_RETURN(std::string raw, RequiredString(j, "raw_majority"));
    PA_ASSIGN_OR_RETURN(e.raw_majority, ParseRawLabel(raw));
    PA_ASSIGN_OR_RETURN(std::string label, RequiredString(j, "label"));
    PA_ASSIGN_OR_RETURN(e.label, ParseBinaryLabel(label));
    if (e.label != CollapseLabel(e.raw_majority)) {
      return absl::InvalidArgumentError(
          absl::StrCat("label of ", e.video_id, " disagrees with raw_majority"));
    }
    out.push_back(std::move(e));
    return absl::OkStatus();
  }));
  return out;
}

absl::Status SaveGroundTruth(const std::filesystem::path& path,
                             const std::vector<GroundTruthEntry>& entries) {
  return WriteLines(path, entries, [](const GroundTruthEntry& e) {
    nlohmann::ordered_json j;
    j["video_id"] = e.video_id;
    j["raw_majority"] = std::string(RawLabelName(e.raw_majority));
    j["label"] = std::string(BinaryLabelName(e.label));
    return j;
  });
}

}  // namespace pseudoaudit
