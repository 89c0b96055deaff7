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

#ifndef PSEUDOAUDIT_AUDIT_PROFILES_H_
#define PSEUDOAUDIT_AUDIT_PROFILES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/platform/platform.h"

namespace pseudoaudit {

// kNone is a user without watch history.
enum class Persona { kScience, kPseudoscience, kMixed, kNone };

std::string_view PersonaName(Persona persona);
absl::StatusOr<Persona> ParsePersona(std::string_view name);

// Views desc, then likes desc, then comment_count desc, then id asc.
bool MorePopular(const VideoRecord& a, const VideoRecord& b);

// Watches the `count` most popular ground-truth videos of the persona at
// `fraction` and checkpoints the profile. Science means a science majority
// label (not irrelevant). The mixed persona takes count / 2 (rounded down)
// science videos followed by the rest from pseudoscience. Only videos the
// platform knows are eligible.
absl::Status BuildProfile(Platform& platform, Profile* profile, Persona persona,
                          std::span<const GroundTruthEntry> ground_truth, size_t count = 100,
                          double fraction = 0.5);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_AUDIT_PROFILES_H_
