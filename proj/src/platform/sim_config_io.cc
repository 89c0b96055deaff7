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

#include "pseudoaudit/platform/sim_config_io.h"

#include <set>

#include "absl/strings/str_cat.h"
#include "pseudoaudit/corpus/dataset_io.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

absl::Status RejectUnknownKeys(const json& j, const std::set<std::string>& known,
                               std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown key '", key, "' in ", std::string(where)));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> NumberField(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be a number"));
  }
  return j[key].get<double>();
}

}  // namespace

ordered_json SimConfigToJson(const SimConfig& config) {
  ordered_json j;
  j["kind"] = std::string(PlatformKindName(config.kind));
  j["lambda"] = config.lambda;
  j["jitter"] = config.jitter;
  j["seed"] = config.seed;
  ordered_json universe = ordered_json::array();
  ordered_json edges = ordered_json::object();
  ordered_json base_scores = ordered_json::object();
  for (const SimVideo& v : config.videos) {
    ordered_json entry;
    entry["video"] = VideoRecordToJson(v.record);
    entry["class"] = std::string(VideoClassName(v.video_class));
    universe.push_back(std::move(entry));
    ordered_json list = ordered_json::array();
    for (const SimEdge& e : v.edges) {
      ordered_json edge;
      edge["target"] = e.target;
      edge["score"] = e.score;
      list.push_back(std::move(edge));
    }
    edges[v.record.id] = std::move(list);
    base_scores[v.record.id] = v.base_score;
  }
  j["universe"] = std::move(universe);
  j["edges"] = std::move(edges);
  j["base_scores"] = std::move(base_scores);
  return j;
}

absl::StatusOr<SimConfig> SimConfigFromJson(const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("sim config must be an object");
  PA_RETURN_IF_ERROR(RejectUnknownKeys(
      j, {"kind", "lambda", "jitter", "seed", "universe", "edges", "base_scores"}, "sim config"));
  SimConfig config;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) return absl::InvalidArgumentError("'kind' must be a string");
    PA_ASSIGN_OR_RETURN(config.kind, ParsePlatformKind(j["kind"].get<std::string>()));
  }
  PA_ASSIGN_OR_RETURN(config.lambda, NumberField(j, "lambda"));
  if (j.contains("jitter")) {
    PA_ASSIGN_OR_RETURN(config.jitter, NumberField(j, "jitter"));
  }
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) {
    return absl::InvalidArgumentError("'seed' must be a non-negative integer");
  }
  config.seed = j["seed"].get<uint64_t>();
  if (!j.contains("universe") || !j["universe"].is_array()) {
    return absl::InvalidArgumentError("'universe' must be an array");
  }
  const json empty = json::object();
  const json& edges = j.contains("edges") ? j["edges"] : empty;
  const json& base_scores = j.contains("base_scores") ? j["base_scores"] : empty;
  if (!edges.is_object()) return absl::InvalidArgumentError("'edges' must be an object");
  if (!base_scores.is_object()) return absl::InvalidArgumentError("'base_scores' must be an object");

  std::set<std::string> ids;
  for (size_t i = 0; i < j["universe"].size(); ++i) {
    const json& entry = j["universe"][i];
    const std::string where = absl::StrCat("universe[", i, "]");
    if (!entry.is_object() || !entry.contains("video")) {
      return absl::InvalidArgumentError(absl::StrCat(where, " must hold a 'video' object"));
    }
    PA_RETURN_IF_ERROR(RejectUnknownKeys(entry, {"video", "class"}, where));
    std::vector<std::string> unknown;
    auto record = VideoRecordFromJson(entry["video"], &unknown);
    if (!record.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": ", record.status().message()));
    }
    if (!unknown.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown key '", unknown.front(), "' in ", where, ".video"));
    }
    SimVideo v;
    v.record = *std::move(record);
    if (!entry.contains("class") || !entry["class"].is_string()) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": 'class' must be a string"));
    }
    PA_ASSIGN_OR_RETURN(v.video_class, ParseVideoClass(entry["class"].get<std::string>()));
    if (base_scores.contains(v.record.id)) {
      if (!base_scores[v.record.id].is_number()) {
        return absl::InvalidArgumentError(
            absl::StrCat("base score of '", v.record.id, "' must be a number"));
      }
      v.base_score = base_scores[v.record.id].get<double>();
    }
    if (edges.contains(v.record.id)) {
      const json& list = edges[v.record.id];
      if (!list.is_array()) {
        return absl::InvalidArgumentError(
            absl::StrCat("edges of '", v.record.id, "' must be an array"));
      }
      for (const json& e : list) {
        if (!e.is_object() || !e.contains("target") || !e["target"].is_string() ||
            !e.contains("score") || !e["score"].is_number()) {
          return absl::InvalidArgumentError(
              absl::StrCat("edges of '", v.record.id, "' need string target and number score"));
        }
        v.edges.push_back({e["target"].get<std::string>(), e["score"].get<double>()});
      }
    }
    ids.insert(v.record.id);
    config.videos.push_back(std::move(v));
  }
  for (const auto& [id, value] : edges.items()) {
    if (!ids.contains(id)) {
      return absl::InvalidArgumentError(absl::StrCat("edges listed for unknown video '", id, "'"));
    }
  }
  for (const auto& [id, value] : base_scores.items()) {
    if (!ids.contains(id)) {
      return absl::InvalidArgumentError(
          absl::StrCat("base score listed for unknown video '", id, "'"));
    }
  }
  PA_RETURN_IF_ERROR(ValidateSimConfig(config));
  return config;
}

absl::Status SaveSimConfig(const SimConfig& config, const std::filesystem::path& path) {
  return WriteFileBytes(path, SimConfigToJson(config).dump(1) + "\n");
}

absl::StatusOr<SimConfig> LoadSimConfig(const std::filesystem::path& path) {
  PA_ASSIGN_OR_RETURN(std::string text, ReadFileBytes(path));
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), ": malformed JSON"));
  }
  auto config = SimConfigFromJson(j);
  if (!config.ok()) {
    return absl::Status(config.status().code(),
                        absl::StrCat(path.string(), ": ", config.status().message()));
  }
  return config;
}

}  // namespace pseudoaudit
