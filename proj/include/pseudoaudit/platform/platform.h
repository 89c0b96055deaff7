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

#ifndef PSEUDOAUDIT_PLATFORM_PLATFORM_H_
#define PSEUDOAUDIT_PLATFORM_PLATFORM_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/corpus/video_record.h"

namespace pseudoaudit {

struct WatchEvent {
  std::string video_id;
  double fraction = 1.0;  // in (0, 1]

  bool operator==(const WatchEvent&) const = default;
};

struct Profile {
  std::string id;
  std::map<std::string, std::string> attributes;  // carried, never read
  std::vector<WatchEvent> history;
  size_t checkpoint = 0;  // length of the frozen prefix of `history`
};

// Freezes the current history as the prefix later resets return to.
void SetCheckpoint(Profile* profile);

// Drops every watch after the checkpoint.
void ResetToCheckpoint(Profile* profile);

// A recommendation platform as seen by the audit engine. Implementations are
// single-writer state machines: calls on one instance must be serialized.
class Platform {
 public:
  virtual ~Platform() = default;

  // Top `n` homepage videos for `profile`.
  virtual absl::StatusOr<std::vector<std::string>> Homepage(const Profile& profile,
                                                            size_t n) const = 0;

  // Top `n` results of `query`, drawn from videos of `topic`.
  virtual absl::StatusOr<std::vector<std::string>> Search(const Profile& profile, Topic topic,
                                                          std::string_view query,
                                                          size_t n) const = 0;

  // Top `n` recommendations shown next to `video_id`.
  virtual absl::StatusOr<std::vector<std::string>> Recommendations(const Profile& profile,
                                                                   std::string_view video_id,
                                                                   size_t n = 10) const = 0;

  // Appends (video_id, fraction) to the profile history.
  virtual absl::Status Watch(Profile* profile, std::string_view video_id, double fraction) = 0;

  // Index of the current repetition; stands in for the wall-clock wait
  // between repeated measurements.
  virtual void SetRepetition(uint64_t repetition) = 0;

  // Metadata of a known video, or null.
  virtual const VideoRecord* FindVideo(std::string_view video_id) const = 0;

  // Every known video id, sorted.
  virtual std::vector<std::string> VideoIds() const = 0;
};

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_PLATFORM_PLATFORM_H_
