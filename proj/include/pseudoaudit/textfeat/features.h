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

#ifndef PSEUDOAUDIT_TEXTFEAT_FEATURES_H_
#define PSEUDOAUDIT_TEXTFEAT_FEATURES_H_

#include <array>
#include <string>

#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/textfeat/embedding_model.h"

namespace pseudoaudit {

// Title, one space, description.
std::string SnippetOf(const VideoRecord& video);

// Input text of one branch: the snippet, the space-joined tags, the
// transcript, or the first 200 comments joined by single spaces.
std::string FeatureText(const VideoRecord& video, FeatureType type);

// One trained model per branch, in kFeatureTypes order.
using EmbeddingSet = std::array<EmbeddingModel, 4>;

using BranchFeatures = std::array<FeatureVector, 4>;

BranchFeatures ExtractFeatures(const EmbeddingSet& models, const VideoRecord& video);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_TEXTFEAT_FEATURES_H_
