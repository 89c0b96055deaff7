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

#include "pseudoaudit/audit/warmup.h"

#include "absl/strings/str_cat.h"
#include "pseudoaudit/audit/stats.h"
#include "pseudoaudit/util/random.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

constexpr size_t kReferenceRecommendations = 10;

bool IsCovidPseudo(const Platform& platform, const std::map<std::string, BinaryLabel>& labels,
                   const std::string& id) {
  const VideoRecord* v = platform.FindVideo(id);
  auto it = labels.find(id);
  return v != nullptr && v->topic == Topic::kCovid19 && it != labels.end() &&
         it->second == BinaryLabel::kPseudoscience;
}

}  // namespace

absl::StatusOr<std::vector<std::string>> WarmupPool(const Platform& platform,
                                                    const std::map<std::string, BinaryLabel>& labels,
                                                    std::string_view reference, uint64_t seed,
                                                    size_t limit) {
  if (limit > kWarmupPoolLimit) {
    return absl::InvalidArgumentError("warm-up pool is limited to 100 videos");
  }
  std::vector<std::string> pool;
  for (const std::string& id : platform.VideoIds()) {
    if (id == reference || !IsCovidPseudo(platform, labels, id)) continue;
    if (platform.FindVideo(id)->duration_s > kWarmupMaxDuration) continue;
    pool.push_back(id);
  }
  Rng rng(DeriveKey(seed, "warmup-pool"));
  rng.Shuffle(std::span<std::string>(pool));
  if (pool.size() > limit) pool.resize(limit);
  return pool;
}

absl::StatusOr<std::string> DefaultReferenceVideo(const Platform& platform,
                                                  const std::map<std::string, BinaryLabel>& labels) {
  Profile empty;
  for (const std::string& id : platform.VideoIds()) {
    if (!IsCovidPseudo(platform, labels, id)) continue;
    if (platform.Recommendations(empty, id, kReferenceRecommendations).ok()) return id;
  }
  return absl::NotFoundError("no COVID-19 pseudoscience video with 10 recommendations");
}

absl::StatusOr<WarmupResult> WarmupLength(Platform& platform, Profile* profile,
                                          std::string_view reference,
                                          std::span<const std::string> pool, double fraction) {
  if (pool.size() > kWarmupPoolLimit) {
    return absl::InvalidArgumentError("warm-up pool is limited to 100 videos");
  }
  for (const std::string& id : pool) {
    const VideoRecord* v = platform.FindVideo(id);
    if (v == nullptr) return absl::NotFoundError(absl::StrCat("unknown pool video '", id, "'"));
    if (v->duration_s > kWarmupMaxDuration) {
      return absl::InvalidArgumentError(
          absl::StrCat("pool video '", id, "' is longer than 300 s"));
    }
  }
  WarmupResult result;
  PA_ASSIGN_OR_RETURN(result.initial_recommendations,
                      platform.Recommendations(*profile, reference, kReferenceRecommendations));
  result.accumulated.insert(result.initial_recommendations.begin(),
                            result.initial_recommendations.end());
  for (const std::string& id : pool) {
    PA_RETURN_IF_ERROR(platform.Watch(profile, id, fraction));
    ++result.watched;
    WarmupIteration it;
    it.watched = id;
    PA_ASSIGN_OR_RETURN(it.recommendations,
                        platform.Recommendations(*profile, reference, kReferenceRecommendations));
    const std::set<std::string> current(it.recommendations.begin(), it.recommendations.end());
    PA_ASSIGN_OR_RETURN(it.overlap, OverlapCoefficient(current, result.accumulated));
    result.iterations.push_back(it);
    if (it.overlap >= kWarmupThreshold) {
      result.converged = true;
      return result;
    }
    result.accumulated.insert(current.begin(), current.end());
  }
  return result;
}

}  // namespace pseudoaudit
