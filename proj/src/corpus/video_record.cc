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

#include "pseudoaudit/corpus/video_record.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace pseudoaudit {

std::string_view TopicName(Topic topic) {
  switch (topic) {
    case Topic::kCovid19: return "covid19";
    case Topic::kAntiVaccination: return "antivaccination";
    case Topic::kAntiMask: return "antimask";
    case Topic::kFlatEarth: return "flatearth";
    case Topic::kNone: return "none";
  }
  return "none";
}

absl::StatusOr<Topic> ParseTopic(std::string_view name) {
  for (Topic t : {Topic::kCovid19, Topic::kAntiVaccination, Topic::kAntiMask,
                  Topic::kFlatEarth, Topic::kNone}) {
    if (TopicName(t) == name) return t;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown topic '", std::string(name), "'"));
}

std::string_view RawLabelName(RawLabel label) {
  switch (label) {
    case RawLabel::kScience: return "science";
    case RawLabel::kPseudoscience: return "pseudoscience";
    case RawLabel::kIrrelevant: return "irrelevant";
  }
  return "irrelevant";
}

absl::StatusOr<RawLabel> ParseRawLabel(std::string_view name) {
  for (RawLabel l : {RawLabel::kScience, RawLabel::kPseudoscience, RawLabel::kIrrelevant}) {
    if (RawLabelName(l) == name) return l;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown label '", std::string(name), "'"));
}

std::string_view BinaryLabelName(BinaryLabel label) {
  return label == BinaryLabel::kPseudoscience ? "pseudoscience" : "other";
}

absl::StatusOr<BinaryLabel> ParseBinaryLabel(std::string_view name) {
  if (name == "pseudoscience") return BinaryLabel::kPseudoscience;
  if (name == "other") return BinaryLabel::kOther;
  return absl::InvalidArgumentError(absl::StrCat("unknown binary label '", std::string(name), "'"));
}

}  // namespace pseudoaudit
