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

#ifndef PSEUDOAUDIT_CLI_RUN_CONFIG_H_
#define PSEUDOAUDIT_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "pseudoaudit/audit/experiments.h"
#include "pseudoaudit/audit/profiles.h"
#include "pseudoaudit/classifier/training.h"
#include "pseudoaudit/platform/simulator.h"
#include "pseudoaudit/platform/universe.h"
#include "pseudoaudit/textfeat/embedding_model.h"

namespace pseudoaudit {

// Relative paths in a config file are resolved against the file's directory.
// Empty means "not configured".
struct PathsConfig {
  std::filesystem::path dataset;
  std::filesystem::path annotations;
  std::filesystem::path expert_labels;
  std::filesystem::path overrides;
  std::filesystem::path pretrained;
  std::filesystem::path models;      // trained models to read; default <output_dir>/models
  std::filesystem::path sim_config;  // default <output_dir>/sim.json
  std::filesystem::path output_dir;
};

struct ExperimentConfig {
  size_t home_n = 30;
  int home_reps = 50;
  size_t search_n = 20;
  int search_reps = 50;
  int walks_per_query = 50;
  int hops = 5;
  size_t branch = 10;
  double fraction = 0.5;
  size_t profile_size = 100;
  std::vector<uint64_t> seeds = {0};
  size_t warmup_pool = 100;
  uint64_t warmup_seed = 0;
  std::string reference_video;  // empty picks the default
};

struct ProfileSpec {
  std::string name;
  Persona persona = Persona::kNone;
  PlatformKind platform = PlatformKind::kSimulator;
};

enum class LabelSource { kModel, kSimulator };

struct RunConfig {
  PathsConfig paths;
  EmbeddingHyperparams embedding;
  TrainConfig classifier;
  bool use_tuned_threshold = false;
  UniverseOptions simulator;
  bool universe_includes_dataset = true;
  ExperimentConfig experiment;
  TopicQueries queries = DefaultTopicQueries();
  std::vector<ProfileSpec> profiles;
  LabelSource labels = LabelSource::kModel;
};

// Science, pseudoscience, mixed and history-less simulator profiles plus a
// stateless API client.
std::vector<ProfileSpec> DefaultProfiles();

struct LoadedConfig {
  RunConfig config;
  // Every problem found, one line each, naming the offending key.
  std::vector<std::string> diagnostics;
  // Complete config with defaults filled in and absolute paths.
  nlohmann::ordered_json effective;
};

// Applies "a.b.c=value" overrides to a raw document. The value is parsed as
// JSON when possible and taken as a string otherwise.
absl::Status ApplySetOverride(std::string_view assignment, nlohmann::json* doc);

// Parses a raw document. Unknown keys, wrong types and out-of-range values
// become diagnostics rather than errors.
LoadedConfig ParseRunConfig(const nlohmann::json& doc, const std::filesystem::path& base_dir);

// Reads `path` (a run config, or a manifest holding one under "config"),
// applies the overrides, then parses it. Fails only when the file cannot be
// read or is not JSON.
absl::StatusOr<LoadedConfig> LoadRunConfig(const std::filesystem::path& path,
                                           const std::vector<std::string>& set_overrides,
                                           const std::optional<std::filesystem::path>& output_dir);

// Inputs a command needs.
enum class Requirement { kDataset, kAnnotations, kModels, kSimConfig };

// Diagnostics for configured paths that do not exist and required inputs
// that are missing.
std::vector<std::string> CheckPaths(const RunConfig& config,
                                    const std::vector<Requirement>& required);

std::filesystem::path ModelsDir(const RunConfig& config);
std::filesystem::path SimConfigPath(const RunConfig& config);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLI_RUN_CONFIG_H_
