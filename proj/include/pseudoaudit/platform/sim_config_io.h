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

#ifndef PSEUDOAUDIT_PLATFORM_SIM_CONFIG_IO_H_
#define PSEUDOAUDIT_PLATFORM_SIM_CONFIG_IO_H_

#include <filesystem>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "pseudoaudit/platform/simulator.h"

namespace pseudoaudit {

// JSON document:
//   {"kind": "simulator"|"stateless", "lambda": x, "jitter": x, "seed": n,
//    "universe": [{"video": {VideoRecord fields}, "class": "pseudo"|"other"}, ...],
//    "edges": {"<id>": [{"target": "<id>", "score": x}, ...], ...},
//    "base_scores": {"<id>": x, ...}}
// Edge lists are stored in rank order. Unknown keys are rejected.
nlohmann::ordered_json SimConfigToJson(const SimConfig& config);
absl::StatusOr<SimConfig> SimConfigFromJson(const nlohmann::json& j);

absl::Status SaveSimConfig(const SimConfig& config, const std::filesystem::path& path);
absl::StatusOr<SimConfig> LoadSimConfig(const std::filesystem::path& path);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_PLATFORM_SIM_CONFIG_IO_H_
