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

#ifndef PSEUDOAUDIT_AUDIT_WARMUP_H_
#define PSEUDOAUDIT_AUDIT_WARMUP_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/platform/platform.h"

namespace pseudoaudit {

inline constexpr size_t kWarmupPoolLimit = 100;
inline constexpr uint32_t kWarmupMaxDuration = 300;
inline constexpr double kWarmupThreshold = 1.0;

struct WarmupIteration {
  std::string watched;
  std::vector<std::string> recommendations;
  double overlap = 0.0;
};

struct WarmupResult {
  bool converged = false;
  // Videos watched when the stop condition held; the pool size otherwise.
  int watched = 0;
  std::vector<std::string> initial_recommendations;
  std::set<std::string> accumulated;
  std::vector<WarmupIteration> iterations;
};

// Up to `limit` COVID-19 pseudoscience videos no longer than 300 s, excluding
// `reference`, in a seeded random order.
absl::StatusOr<std::vector<std::string>> WarmupPool(const Platform& platform,
                                                    const std::map<std::string, BinaryLabel>& labels,
                                                    std::string_view reference, uint64_t seed,
                                                    size_t limit = kWarmupPoolLimit);

// First COVID-19 pseudoscience video (by id) that has at least 10
// recommendations.
absl::StatusOr<std::string> DefaultReferenceVideo(const Platform& platform,
                                                  const std::map<std::string, BinaryLabel>& labels);

// Watches pool videos one by one until the reference video's top 10 is
// contained in every top 10 collected before (overlap coefficient with their
// union reaches 1).
absl::StatusOr<WarmupResult> WarmupLength(Platform& platform, Profile* profile,
                                          std::string_view reference,
                                          std::span<const std::string> pool,
                                          double fraction = 0.5);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_AUDIT_WARMUP_H_
