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

#ifndef PSEUDOAUDIT_PLATFORM_SIMULATOR_H_
#define PSEUDOAUDIT_PLATFORM_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/platform/platform.h"

namespace pseudoaudit {

enum class VideoClass { kOther, kPseudo };

std::string_view VideoClassName(VideoClass video_class);  // "other" / "pseudo"
absl::StatusOr<VideoClass> ParseVideoClass(std::string_view name);

enum class PlatformKind { kSimulator, kStateless };

std::string_view PlatformKindName(PlatformKind kind);
absl::StatusOr<PlatformKind> ParsePlatformKind(std::string_view name);

struct SimEdge {
  std::string target;
  double score = 0.0;
};

struct SimVideo {
  VideoRecord record;
  VideoClass video_class = VideoClass::kOther;
  double base_score = 0.0;
  std::vector<SimEdge> edges;  // recommendation candidates, ranked
};

struct SimConfig {
  PlatformKind kind = PlatformKind::kSimulator;
  std::vector<SimVideo> videos;
  double lambda = 0.0;  // personalization weight
  double jitter = 0.25;  // amplitude of per-repetition homepage/search noise
  uint64_t seed = 0;
};

// Unique ids, edges onto known videos, at least 10 candidates for every video
// of an audited topic, lambda >= 0, jitter >= 0, positive durations.
absl::Status ValidateSimConfig(const SimConfig& config);

// Deterministic platform over a SimConfig.
//
// Homepage and search score each candidate as
//   base_score + lambda * affinity + jitter * u(seed, surface, query, repetition, candidate)
// and recommendations score graph candidates as edge score + lambda * affinity,
// where affinity is the share of the profile's watched videos with the
// candidate's class (0 for an empty history). Ranks are by score, ties by id.
// Noise is never keyed by the profile, so lambda = 0 makes every output
// independent of the profile.
//
// The stateless kind models a logged-out API client: lambda is ignored, so it
// returns exactly what a lambda = 0 simulator with the same seed returns.
class SimPlatform : public Platform {
 public:
  static absl::StatusOr<std::unique_ptr<SimPlatform>> Create(SimConfig config);

  absl::StatusOr<std::vector<std::string>> Homepage(const Profile& profile,
                                                    size_t n) const override;
  absl::StatusOr<std::vector<std::string>> Search(const Profile& profile, Topic topic,
                                                  std::string_view query,
                                                  size_t n) const override;
  absl::StatusOr<std::vector<std::string>> Recommendations(const Profile& profile,
                                                           std::string_view video_id,
                                                           size_t n = 10) const override;
  absl::Status Watch(Profile* profile, std::string_view video_id, double fraction) override;
  void SetRepetition(uint64_t repetition) override { repetition_ = repetition; }
  const VideoRecord* FindVideo(std::string_view video_id) const override;
  std::vector<std::string> VideoIds() const override;

  const SimConfig& config() const { return config_; }
  const SimVideo* FindSimVideo(std::string_view video_id) const;

  // Share of history entries whose video has `video_class`.
  double Affinity(const Profile& profile, VideoClass video_class) const;

 private:
  explicit SimPlatform(SimConfig config);

  double EffectiveLambda() const;
  double Noise(std::string_view surface, std::string_view query, const std::string& id) const;

  SimConfig config_;
  std::unordered_map<std::string, size_t> index_;
  uint64_t repetition_ = 0;
};

// Labels implied by the simulator's classes: pseudo videos are
// pseudoscience, everything else is other.
std::map<std::string, BinaryLabel> SimulatorLabels(const SimConfig& config);

// Ground truth implied by the simulator: pseudo videos are pseudoscience,
// other videos with an audited topic are science and topic-less videos are
// irrelevant. Sorted by id.
std::vector<GroundTruthEntry> SimulatorGroundTruth(const SimConfig& config);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_PLATFORM_SIMULATOR_H_
