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

#include "pseudoaudit/textfeat/features.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace pseudoaudit {

std::string SnippetOf(const VideoRecord& video) {
  return absl::StrCat(video.title, " ", video.description);
}

std::string FeatureText(const VideoRecord& video, FeatureType type) {
  switch (type) {
    case FeatureType::kSnippet:
      return SnippetOf(video);
    case FeatureType::kTags:
      return absl::StrJoin(video.tags, " ");
    case FeatureType::kTranscript:
      return video.transcript;
    case FeatureType::kComments: {
      const size_t n = std::min(video.comments.size(), kMaxComments);
      return absl::StrJoin(video.comments.begin(), video.comments.begin() + n, " ");
    }
  }
  return std::string();
}

BranchFeatures ExtractFeatures(const EmbeddingSet& models, const VideoRecord& video) {
  BranchFeatures features;
  for (size_t b = 0; b < kFeatureTypes.size(); ++b) {
    features[b] = models[b].Embed(FeatureText(video, kFeatureTypes[b]));
  }
  return features;
}

}  // namespace pseudoaudit
