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

#include "pseudoaudit/audit/experiments.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"
#include "pseudoaudit/util/random.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

absl::StatusOr<bool> IsPseudo(const VideoLabels& labels, const std::string& id) {
  auto it = labels.find(id);
  if (it == labels.end()) return absl::NotFoundError(absl::StrCat("no label for video '", id, "'"));
  return it->second == BinaryLabel::kPseudoscience;
}

absl::Status TallyAll(const VideoLabels& labels, const std::vector<std::string>& ids,
                      UniqueTally* tally) {
  for (const std::string& id : ids) {
    PA_ASSIGN_OR_RETURN(bool pseudo, IsPseudo(labels, id));
    tally->Add(id, pseudo);
  }
  return absl::OkStatus();
}

absl::Status CheckReps(int reps) {
  if (reps < 1) return absl::InvalidArgumentError("repetitions must be >= 1");
  return absl::OkStatus();
}

// One walk attempt; the profile is reset before it starts.
absl::StatusOr<WalkRecord> Walk(Platform& platform, Profile* profile, Topic topic,
                                const std::string& query, int walk, int attempt,
                                const VideoLabels& labels, const WalkOptions& options) {
  ResetToCheckpoint(profile);
  platform.SetRepetition(static_cast<uint64_t>(walk));
  Rng rng(DeriveKey(options.seed, "walk", query, static_cast<uint64_t>(walk),
                    static_cast<uint64_t>(attempt)));
  WalkRecord record;
  record.query = query;
  PA_ASSIGN_OR_RETURN(std::vector<std::string> results,
                      platform.Search(*profile, topic, query, options.search_results));
  record.start = results[rng.UniformIndex(results.size())];
  PA_RETURN_IF_ERROR(platform.Watch(profile, record.start, options.fraction));
  std::set<std::string> visited = {record.start};
  std::string current = record.start;
  for (int hop = 0; hop < options.hops; ++hop) {
    PA_ASSIGN_OR_RETURN(std::vector<std::string> recs,
                        platform.Recommendations(*profile, current, options.branch));
    std::vector<std::string> fresh;
    for (const std::string& id : recs) {
      if (!visited.contains(id)) fresh.push_back(id);
    }
    if (fresh.empty()) {
      record.truncated = true;
      break;
    }
    current = fresh[rng.UniformIndex(fresh.size())];
    visited.insert(current);
    PA_RETURN_IF_ERROR(platform.Watch(profile, current, options.fraction));
    PA_ASSIGN_OR_RETURN(bool pseudo, IsPseudo(labels, current));
    record.hops.push_back(current);
    record.hop_pseudo.push_back(pseudo);
  }
  return record;
}

}  // namespace

TopicQueries DefaultTopicQueries() {
  return {{Topic::kCovid19, {"covid-19", "coronavirus"}},
          {Topic::kAntiVaccination, {"anti-vaccination"}},
          {Topic::kAntiMask, {"anti-mask"}},
          {Topic::kFlatEarth, {"flat earth"}}};
}

absl::StatusOr<UniqueTally> HomepageExperiment(Platform& platform, Profile* profile,
                                               const VideoLabels& labels, size_t n, int reps) {
  PA_RETURN_IF_ERROR(CheckReps(reps));
  UniqueTally tally;
  for (int r = 0; r < reps; ++r) {
    ResetToCheckpoint(profile);
    platform.SetRepetition(static_cast<uint64_t>(r));
    PA_ASSIGN_OR_RETURN(std::vector<std::string> ids, platform.Homepage(*profile, n));
    PA_RETURN_IF_ERROR(TallyAll(labels, ids, &tally));
  }
  ResetToCheckpoint(profile);
  return tally;
}

absl::StatusOr<UniqueTally> SearchExperiment(Platform& platform, Profile* profile, Topic topic,
                                             std::string_view query, const VideoLabels& labels,
                                             size_t n, int reps) {
  PA_RETURN_IF_ERROR(CheckReps(reps));
  UniqueTally tally;
  for (int r = 0; r < reps; ++r) {
    ResetToCheckpoint(profile);
    platform.SetRepetition(static_cast<uint64_t>(r));
    PA_ASSIGN_OR_RETURN(std::vector<std::string> ids, platform.Search(*profile, topic, query, n));
    PA_RETURN_IF_ERROR(TallyAll(labels, ids, &tally));
  }
  ResetToCheckpoint(profile);
  return tally;
}

absl::StatusOr<TopicWalks> RandomWalkExperiment(Platform& platform, Profile* profile, Topic topic,
                                                std::span<const std::string> queries,
                                                const VideoLabels& labels,
                                                const WalkOptions& options) {
  if (queries.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("topic ", std::string(TopicName(topic)), " has no queries"));
  }
  if (options.walks_per_query < 1 || options.hops < 1 || options.branch < 1 ||
      options.search_results < 1 || options.retry_cap < 0) {
    return absl::InvalidArgumentError("walk parameters must be positive");
  }
  TopicWalks out;
  std::set<std::vector<std::string>> sequences;
  for (const std::string& query : queries) {
    std::vector<UniqueTally>& hops = out.hop_tallies[query];
    hops.assign(options.hops, UniqueTally());
    for (int w = 0; w < options.walks_per_query; ++w) {
      WalkRecord record;
      for (int attempt = 0;; ++attempt) {
        if (attempt > options.retry_cap) {
          return absl::ResourceExhaustedError(absl::StrCat(
              "walk ", w, " of query '", query, "' repeated an earlier walk ", attempt,
              " times"));
        }
        PA_ASSIGN_OR_RETURN(record,
                            Walk(platform, profile, topic, query, w, attempt, labels, options));
        std::vector<std::string> sequence = {record.start};
        sequence.insert(sequence.end(), record.hops.begin(), record.hops.end());
        if (sequences.insert(std::move(sequence)).second) break;
      }
      // A video seen at hop j counts for every k >= j.
      for (size_t j = 0; j < record.hops.size(); ++j) {
        for (int k = static_cast<int>(j); k < options.hops; ++k) {
          hops[k].Add(record.hops[j], record.hop_pseudo[j]);
        }
      }
      out.walks.push_back(std::move(record));
    }
  }
  ResetToCheckpoint(profile);
  return out;
}

absl::Status MergeResults(const AuditResults& from, AuditResults* into) {
  for (const ProfileResults& p : from.profiles) {
    auto it = std::find_if(into->profiles.begin(), into->profiles.end(),
                           [&](const ProfileResults& q) { return q.profile == p.profile; });
    if (it == into->profiles.end()) {
      into->profiles.push_back(p);
      continue;
    }
    if (p.home.has_value()) {
      if (!it->home.has_value()) it->home.emplace();
      it->home->Merge(*p.home);
    }
    for (const auto& [topic, queries] : p.search) {
      for (const auto& [query, tally] : queries) it->search[topic][query].Merge(tally);
    }
    for (const auto& [topic, queries] : p.walks) {
      for (const auto& [query, hops] : queries) {
        std::vector<UniqueTally>& target = it->walks[topic][query];
        if (target.empty()) target.resize(hops.size());
        if (target.size() != hops.size()) {
          return absl::InvalidArgumentError(
              absl::StrCat("cannot merge walks with different hop counts for profile '",
                           p.profile, "'"));
        }
        for (size_t k = 0; k < hops.size(); ++k) target[k].Merge(hops[k]);
      }
    }
    it->walk_count += p.walk_count;
    it->truncated_walks += p.truncated_walks;
  }
  return absl::OkStatus();
}

}  // namespace pseudoaudit
