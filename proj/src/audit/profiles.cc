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

#include "pseudoaudit/audit/profiles.h"

#include <algorithm>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

absl::StatusOr<std::vector<std::string>> MostPopular(const Platform& platform,
                                                     std::span<const GroundTruthEntry> ground_truth,
                                                     RawLabel label, size_t count) {
  std::vector<const VideoRecord*> eligible;
  for (const GroundTruthEntry& e : ground_truth) {
    if (e.raw_majority != label) continue;
    if (const VideoRecord* v = platform.FindVideo(e.video_id); v != nullptr) eligible.push_back(v);
  }
  if (eligible.size() < count) {
    return absl::FailedPreconditionError(absl::StrCat(
        "need ", count, " ", std::string(RawLabelName(label)), " videos, only ", eligible.size(),
        " are eligible"));
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const VideoRecord* a, const VideoRecord* b) { return MorePopular(*a, *b); });
  std::vector<std::string> ids;
  for (size_t i = 0; i < count; ++i) ids.push_back(eligible[i]->id);
  return ids;
}

}  // namespace

std::string_view PersonaName(Persona persona) {
  switch (persona) {
    case Persona::kScience: return "science";
    case Persona::kPseudoscience: return "pseudoscience";
    case Persona::kMixed: return "mixed";
    case Persona::kNone: return "none";
  }
  return "none";
}

absl::StatusOr<Persona> ParsePersona(std::string_view name) {
  for (Persona p : {Persona::kScience, Persona::kPseudoscience, Persona::kMixed, Persona::kNone}) {
    if (name == PersonaName(p)) return p;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown persona '", std::string(name), "'"));
}

bool MorePopular(const VideoRecord& a, const VideoRecord& b) {
  return std::make_tuple(b.views, b.likes, b.comment_count, a.id) <
         std::make_tuple(a.views, a.likes, a.comment_count, b.id);
}

absl::Status BuildProfile(Platform& platform, Profile* profile, Persona persona,
                          std::span<const GroundTruthEntry> ground_truth, size_t count,
                          double fraction) {
  std::vector<std::string> watch;
  switch (persona) {
    case Persona::kScience: {
      PA_ASSIGN_OR_RETURN(watch, MostPopular(platform, ground_truth, RawLabel::kScience, count));
      break;
    }
    case Persona::kPseudoscience: {
      PA_ASSIGN_OR_RETURN(watch,
                          MostPopular(platform, ground_truth, RawLabel::kPseudoscience, count));
      break;
    }
    case Persona::kMixed: {
      PA_ASSIGN_OR_RETURN(watch,
                          MostPopular(platform, ground_truth, RawLabel::kScience, count / 2));
      PA_ASSIGN_OR_RETURN(std::vector<std::string> pseudo,
                          MostPopular(platform, ground_truth, RawLabel::kPseudoscience,
                                      count - count / 2));
      watch.insert(watch.end(), pseudo.begin(), pseudo.end());
      break;
    }
    case Persona::kNone:
      break;
  }
  for (const std::string& id : watch) PA_RETURN_IF_ERROR(platform.Watch(profile, id, fraction));
  SetCheckpoint(profile);
  return absl::OkStatus();
}

}  // namespace pseudoaudit
