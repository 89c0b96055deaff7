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

#ifndef PSEUDOAUDIT_AUDIT_EXPERIMENTS_H_
#define PSEUDOAUDIT_AUDIT_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/audit/stats.h"
#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/platform/platform.h"

namespace pseudoaudit {

// Label of every video an experiment may encounter.
using VideoLabels = std::map<std::string, BinaryLabel>;

// Search queries per audited topic.
using TopicQueries = std::map<Topic, std::vector<std::string>>;

// Two queries for COVID-19 and one for each other topic.
TopicQueries DefaultTopicQueries();

// Per repetition r: reset to the checkpoint, set the repetition counter to r
// and tally the top `n` homepage videos.
absl::StatusOr<UniqueTally> HomepageExperiment(Platform& platform, Profile* profile,
                                               const VideoLabels& labels, size_t n = 30,
                                               int reps = 50);

// Same protocol for the top `n` results of one search query.
absl::StatusOr<UniqueTally> SearchExperiment(Platform& platform, Profile* profile, Topic topic,
                                             std::string_view query, const VideoLabels& labels,
                                             size_t n = 20, int reps = 50);

struct WalkOptions {
  int walks_per_query = 50;
  int hops = 5;
  size_t branch = 10;
  size_t search_results = 20;
  double fraction = 0.5;
  uint64_t seed = 0;
  int retry_cap = 100;
};

struct WalkRecord {
  std::string query;
  std::string start;
  std::vector<std::string> hops;
  std::vector<bool> hop_pseudo;
  bool truncated = false;  // stopped early at a dead end
};

struct TopicWalks {
  // Per query, cumulative tallies over hops 1..k for k = 1..hops. Start
  // videos are never counted.
  std::map<std::string, std::vector<UniqueTally>> hop_tallies;
  std::vector<WalkRecord> walks;
};

// Random walks from the search results of each query. Walk w starts at a
// uniform pick among the top search results under repetition w, then follows
// a uniform pick among the unvisited top-`branch` recommendations for up to
// `hops` hops, watching every video. Walk randomness is keyed by (seed,
// query, walk, attempt). Walks of one topic are redrawn until their id
// sequences are pairwise distinct, at most `retry_cap` times per walk.
absl::StatusOr<TopicWalks> RandomWalkExperiment(Platform& platform, Profile* profile, Topic topic,
                                                std::span<const std::string> queries,
                                                const VideoLabels& labels,
                                                const WalkOptions& options);

// Pooled results of one audited profile.
struct ProfileResults {
  std::string profile;
  std::optional<UniqueTally> home;
  std::map<Topic, std::map<std::string, UniqueTally>> search;
  std::map<Topic, std::map<std::string, std::vector<UniqueTally>>> walks;
  size_t walk_count = 0;
  size_t truncated_walks = 0;
};

struct AuditResults {
  std::vector<ProfileResults> profiles;
};

// Unions the tallies of `from` into `into`, matching profiles by name.
absl::Status MergeResults(const AuditResults& from, AuditResults* into);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_AUDIT_EXPERIMENTS_H_
