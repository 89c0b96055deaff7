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

#ifndef PSEUDOAUDIT_PLATFORM_UNIVERSE_H_
#define PSEUDOAUDIT_PLATFORM_UNIVERSE_H_

#include <cstdint>
#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "pseudoaudit/corpus/synthetic.h"
#include "pseudoaudit/platform/simulator.h"

namespace pseudoaudit {

struct LabeledVideo {
  VideoRecord record;
  VideoClass video_class = VideoClass::kOther;
};

struct UniverseOptions {
  PlatformKind kind = PlatformKind::kSimulator;
  double lambda = 5.0;
  double jitter = 0.25;
  uint64_t seed = 11;
  // Generated videos per audited topic, and topic-less videos.
  int pseudo_per_topic = 60;
  int other_per_topic = 90;
  int unrelated = 150;
  int out_degree = 20;
  // Probability that a recommendation edge stays within the source's topic.
  double topic_homophily = 0.8;
  // Base and edge scores are uniform in [0, score_range).
  double score_range = 10.0;
  TextStyle style;
  std::string id_prefix = "u";
};

// Seeded universe: synthetic videos with the requested (topic, class) counts
// plus `extra` videos, each given a base score and `out_degree` distinct
// ranked recommendation edges.
absl::StatusOr<SimConfig> GenerateUniverse(const UniverseOptions& options,
                                           std::span<const LabeledVideo> extra = {});

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_PLATFORM_UNIVERSE_H_
