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

#include "pseudoaudit/platform/universe.h"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "pseudoaudit/util/random.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {

absl::StatusOr<SimConfig> GenerateUniverse(const UniverseOptions& options,
                                           std::span<const LabeledVideo> extra) {
  if (options.pseudo_per_topic < 0 || options.other_per_topic < 0 || options.unrelated < 0) {
    return absl::InvalidArgumentError("universe video counts must be >= 0");
  }
  if (options.out_degree < 10) return absl::InvalidArgumentError("out_degree must be >= 10");
  if (!(options.topic_homophily >= 0.0 && options.topic_homophily <= 1.0)) {
    return absl::InvalidArgumentError("topic_homophily must be in [0, 1]");
  }
  if (!(options.score_range > 0.0)) return absl::InvalidArgumentError("score_range must be > 0");

  SimConfig config;
  config.kind = options.kind;
  config.lambda = options.lambda;
  config.jitter = options.jitter;
  config.seed = options.seed;

  Rng text_rng(DeriveKey(options.seed, "universe-text"));
  int next_id = 0;
  auto add = [&](RawLabel latent, Topic topic) {
    SimVideo v;
    v.record = SynthesizeVideo(absl::StrFormat("%s%05d", options.id_prefix, next_id++), latent,
                               topic, options.style, text_rng);
    v.video_class = latent == RawLabel::kPseudoscience ? VideoClass::kPseudo : VideoClass::kOther;
    config.videos.push_back(std::move(v));
  };
  for (Topic topic : kAuditedTopics) {
    for (int i = 0; i < options.pseudo_per_topic; ++i) add(RawLabel::kPseudoscience, topic);
    for (int i = 0; i < options.other_per_topic; ++i) add(RawLabel::kScience, topic);
  }
  for (int i = 0; i < options.unrelated; ++i) add(RawLabel::kIrrelevant, Topic::kNone);
  for (const LabeledVideo& e : extra) {
    SimVideo v;
    v.record = e.record;
    v.video_class = e.video_class;
    config.videos.push_back(std::move(v));
  }

  const size_t total = config.videos.size();
  if (total <= static_cast<size_t>(options.out_degree)) {
    return absl::InvalidArgumentError(
        absl::StrCat("universe of ", total, " videos cannot support out_degree ",
                     options.out_degree));
  }
  std::map<Topic, std::vector<size_t>> by_topic;
  for (size_t i = 0; i < total; ++i) by_topic[config.videos[i].record.topic].push_back(i);

  Rng score_rng(DeriveKey(options.seed, "universe-scores"));
  for (SimVideo& v : config.videos) v.base_score = score_rng.Uniform(0.0, options.score_range);

  Rng edge_rng(DeriveKey(options.seed, "universe-edges"));
  for (size_t i = 0; i < total; ++i) {
    const std::vector<size_t>& same_topic = by_topic[config.videos[i].record.topic];
    std::unordered_set<size_t> chosen;
    // The same-topic pool may be too small for the whole out-degree, so its
    // draws stop once it has nothing left to offer.
    size_t same_topic_left = same_topic.size() - 1;
    std::vector<size_t> order;
    while (order.size() < static_cast<size_t>(options.out_degree)) {
      size_t target;
      if (same_topic_left > 0 && edge_rng.Uniform01() < options.topic_homophily) {
        target = same_topic[edge_rng.UniformIndex(same_topic.size())];
      } else {
        target = edge_rng.UniformIndex(total);
      }
      if (target == i || !chosen.insert(target).second) continue;
      if (config.videos[target].record.topic == config.videos[i].record.topic) --same_topic_left;
      order.push_back(target);
    }
    std::vector<SimEdge> edges;
    for (size_t target : order) {
      edges.push_back({config.videos[target].record.id, edge_rng.Uniform(0.0, options.score_range)});
    }
    std::sort(edges.begin(), edges.end(), [](const SimEdge& a, const SimEdge& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.target < b.target;
    });
    config.videos[i].edges = std::move(edges);
  }
  PA_RETURN_IF_ERROR(ValidateSimConfig(config));
  return config;
}

}  // namespace pseudoaudit
