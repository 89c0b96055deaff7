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

#include "pseudoaudit/platform/simulator.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "pseudoaudit/util/random.h"

namespace pseudoaudit {
namespace {

constexpr size_t kMinAuditedCandidates = 10;

struct Scored {
  double score;
  const std::string* id;
};

std::vector<std::string> TopN(std::vector<Scored> scored, size_t n) {
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return *a.id < *b.id;
  });
  std::vector<std::string> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(*scored[i].id);
  return out;
}

bool IsAudited(Topic topic) { return topic != Topic::kNone; }

}  // namespace

std::string_view VideoClassName(VideoClass video_class) {
  return video_class == VideoClass::kPseudo ? "pseudo" : "other";
}

absl::StatusOr<VideoClass> ParseVideoClass(std::string_view name) {
  if (name == "pseudo") return VideoClass::kPseudo;
  if (name == "other") return VideoClass::kOther;
  return absl::InvalidArgumentError(absl::StrCat("unknown video class '", std::string(name), "'"));
}

std::string_view PlatformKindName(PlatformKind kind) {
  return kind == PlatformKind::kStateless ? "stateless" : "simulator";
}

absl::StatusOr<PlatformKind> ParsePlatformKind(std::string_view name) {
  if (name == "simulator") return PlatformKind::kSimulator;
  if (name == "stateless") return PlatformKind::kStateless;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown platform kind '", std::string(name), "'"));
}

absl::Status ValidateSimConfig(const SimConfig& config) {
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda)) {
    return absl::InvalidArgumentError("lambda must be a finite value >= 0");
  }
  if (!(config.jitter >= 0.0) || !std::isfinite(config.jitter)) {
    return absl::InvalidArgumentError("jitter must be a finite value >= 0");
  }
  std::unordered_set<std::string> ids;
  for (const SimVideo& v : config.videos) {
    if (v.record.id.empty()) return absl::InvalidArgumentError("video with empty id");
    if (!ids.insert(v.record.id).second) {
      return absl::AlreadyExistsError(absl::StrCat("duplicate video id '", v.record.id, "'"));
    }
    if (v.record.duration_s == 0) {
      return absl::InvalidArgumentError(absl::StrCat("video '", v.record.id, "' has zero duration"));
    }
    if (!std::isfinite(v.base_score)) {
      return absl::InvalidArgumentError(
          absl::StrCat("video '", v.record.id, "' has a non-finite base score"));
    }
  }
  for (const SimVideo& v : config.videos) {
    std::unordered_set<std::string> targets;
    for (const SimEdge& e : v.edges) {
      if (!ids.contains(e.target)) {
        return absl::InvalidArgumentError(
            absl::StrCat("edge ", v.record.id, " -> ", e.target, " targets an unknown video"));
      }
      if (e.target == v.record.id || !targets.insert(e.target).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("video '", v.record.id, "' has a self or repeated edge to '", e.target,
                         "'"));
      }
      if (!std::isfinite(e.score)) {
        return absl::InvalidArgumentError(
            absl::StrCat("edge ", v.record.id, " -> ", e.target, " has a non-finite score"));
      }
    }
    if (IsAudited(v.record.topic) && v.edges.size() < kMinAuditedCandidates) {
      return absl::InvalidArgumentError(absl::StrCat("video '", v.record.id, "' has ",
                                                     v.edges.size(),
                                                     " candidates, fewer than 10"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<SimPlatform>> SimPlatform::Create(SimConfig config) {
  if (absl::Status s = ValidateSimConfig(config); !s.ok()) return s;
  return std::unique_ptr<SimPlatform>(new SimPlatform(std::move(config)));
}

SimPlatform::SimPlatform(SimConfig config) : config_(std::move(config)) {
  for (size_t i = 0; i < config_.videos.size(); ++i) index_.emplace(config_.videos[i].record.id, i);
}

const SimVideo* SimPlatform::FindSimVideo(std::string_view video_id) const {
  auto it = index_.find(std::string(video_id));
  return it == index_.end() ? nullptr : &config_.videos[it->second];
}

const VideoRecord* SimPlatform::FindVideo(std::string_view video_id) const {
  const SimVideo* v = FindSimVideo(video_id);
  return v == nullptr ? nullptr : &v->record;
}

std::vector<std::string> SimPlatform::VideoIds() const {
  std::vector<std::string> ids;
  ids.reserve(config_.videos.size());
  for (const SimVideo& v : config_.videos) ids.push_back(v.record.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

double SimPlatform::Affinity(const Profile& profile, VideoClass video_class) const {
  if (profile.history.empty()) return 0.0;
  size_t matching = 0;
  for (const WatchEvent& w : profile.history) {
    const SimVideo* v = FindSimVideo(w.video_id);
    if (v != nullptr && v->video_class == video_class) ++matching;
  }
  return static_cast<double>(matching) / static_cast<double>(profile.history.size());
}

double SimPlatform::EffectiveLambda() const {
  return config_.kind == PlatformKind::kStateless ? 0.0 : config_.lambda;
}

double SimPlatform::Noise(std::string_view surface, std::string_view query,
                          const std::string& id) const {
  if (config_.jitter == 0.0) return 0.0;
  return config_.jitter * KeyToUnit(DeriveKey(config_.seed, surface, query, repetition_, id));
}

absl::StatusOr<std::vector<std::string>> SimPlatform::Homepage(const Profile& profile,
                                                               size_t n) const {
  if (n > config_.videos.size()) {
    return absl::InvalidArgumentError(absl::StrCat("homepage of ", n, " videos requested from a ",
                                                   config_.videos.size(), "-video universe"));
  }
  const double lambda = EffectiveLambda();
  const double pseudo = lambda > 0.0 ? Affinity(profile, VideoClass::kPseudo) : 0.0;
  const double other = lambda > 0.0 ? Affinity(profile, VideoClass::kOther) : 0.0;
  std::vector<Scored> scored;
  scored.reserve(config_.videos.size());
  for (const SimVideo& v : config_.videos) {
    const double affinity = v.video_class == VideoClass::kPseudo ? pseudo : other;
    scored.push_back({v.base_score + lambda * affinity + Noise("home", "", v.record.id),
                      &v.record.id});
  }
  return TopN(std::move(scored), n);
}

absl::StatusOr<std::vector<std::string>> SimPlatform::Search(const Profile& profile, Topic topic,
                                                             std::string_view query,
                                                             size_t n) const {
  const double lambda = EffectiveLambda();
  const double pseudo = lambda > 0.0 ? Affinity(profile, VideoClass::kPseudo) : 0.0;
  const double other = lambda > 0.0 ? Affinity(profile, VideoClass::kOther) : 0.0;
  std::vector<Scored> scored;
  for (const SimVideo& v : config_.videos) {
    if (v.record.topic != topic) continue;
    const double affinity = v.video_class == VideoClass::kPseudo ? pseudo : other;
    scored.push_back({v.base_score + lambda * affinity + Noise("search", query, v.record.id),
                      &v.record.id});
  }
  if (scored.size() < n) {
    return absl::InvalidArgumentError(absl::StrCat("topic ", std::string(TopicName(topic)),
                                                   " has ", scored.size(),
                                                   " videos, fewer than ", n));
  }
  return TopN(std::move(scored), n);
}

absl::StatusOr<std::vector<std::string>> SimPlatform::Recommendations(
    const Profile& profile, std::string_view video_id, size_t n) const {
  const SimVideo* source = FindSimVideo(video_id);
  if (source == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown video '", std::string(video_id), "'"));
  }
  if (source->edges.size() < n) {
    return absl::FailedPreconditionError(absl::StrCat("video '", std::string(video_id), "' has ",
                                                      source->edges.size(),
                                                      " candidates, fewer than ", n));
  }
  const double lambda = EffectiveLambda();
  const double pseudo = lambda > 0.0 ? Affinity(profile, VideoClass::kPseudo) : 0.0;
  const double other = lambda > 0.0 ? Affinity(profile, VideoClass::kOther) : 0.0;
  std::vector<Scored> scored;
  scored.reserve(source->edges.size());
  for (const SimEdge& e : source->edges) {
    const SimVideo& target = config_.videos[index_.at(e.target)];
    const double affinity = target.video_class == VideoClass::kPseudo ? pseudo : other;
    scored.push_back({e.score + lambda * affinity, &e.target});
  }
  return TopN(std::move(scored), n);
}

absl::Status SimPlatform::Watch(Profile* profile, std::string_view video_id, double fraction) {
  if (FindSimVideo(video_id) == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown video '", std::string(video_id), "'"));
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    return absl::InvalidArgumentError("watched fraction must be in (0, 1]");
  }
  profile->history.push_back({std::string(video_id), fraction});
  return absl::OkStatus();
}

std::map<std::string, BinaryLabel> SimulatorLabels(const SimConfig& config) {
  std::map<std::string, BinaryLabel> labels;
  for (const SimVideo& v : config.videos) {
    labels[v.record.id] =
        v.video_class == VideoClass::kPseudo ? BinaryLabel::kPseudoscience : BinaryLabel::kOther;
  }
  return labels;
}

std::vector<GroundTruthEntry> SimulatorGroundTruth(const SimConfig& config) {
  std::vector<GroundTruthEntry> entries;
  for (const SimVideo& v : config.videos) {
    GroundTruthEntry e;
    e.video_id = v.record.id;
    if (v.video_class == VideoClass::kPseudo) {
      e.raw_majority = RawLabel::kPseudoscience;
    } else {
      e.raw_majority = IsAudited(v.record.topic) ? RawLabel::kScience : RawLabel::kIrrelevant;
    }
    e.label = CollapseLabel(e.raw_majority);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const GroundTruthEntry& a, const GroundTruthEntry& b) {
              return a.video_id < b.video_id;
            });
  return entries;
}

}  // namespace pseudoaudit
