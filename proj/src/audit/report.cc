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

#include "pseudoaudit/audit/report.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json TallyToJson(const UniqueTally& t) {
  ordered_json j;
  j["all"] = t.all;
  j["pseudo"] = t.pseudo;
  return j;
}

absl::StatusOr<UniqueTally> TallyFromJson(const json& j) {
  if (!j.is_object() || !j.contains("all") || !j.contains("pseudo") || !j["all"].is_array() ||
      !j["pseudo"].is_array()) {
    return absl::InvalidArgumentError("tally needs 'all' and 'pseudo' arrays");
  }
  UniqueTally t;
  for (const json& id : j["all"]) {
    if (!id.is_string()) return absl::InvalidArgumentError("tally ids must be strings");
    t.all.insert(id.get<std::string>());
  }
  for (const json& id : j["pseudo"]) {
    if (!id.is_string()) return absl::InvalidArgumentError("tally ids must be strings");
    if (!t.all.contains(id.get<std::string>())) {
      return absl::InvalidArgumentError("pseudo tally id missing from 'all'");
    }
    t.pseudo.insert(id.get<std::string>());
  }
  return t;
}

ReportRow Row(std::string surface, std::string topic, const std::string& profile,
              double percentage, const UniqueTally& tally) {
  return {std::move(surface), std::move(topic), profile, percentage, tally.all.size(),
          tally.pseudo.size()};
}

// Rows of one surface across profiles: per topic in audited order, then the
// "all" row, which adds up the per-topic counts. A video reached from two
// topics counts once per topic.
template <typename PerTopic, typename TopicValue>
void SurfaceRows(const AuditResults& results, const std::string& surface, PerTopic per_topic,
                 TopicValue topic_value, std::vector<ReportRow>* rows) {
  bool any = false;
  for (const ProfileResults& p : results.profiles) any = any || !per_topic(p).empty();
  if (!any) return;
  for (Topic topic : kAuditedTopics) {
    for (const ProfileResults& p : results.profiles) {
      auto it = per_topic(p).find(topic);
      if (it == per_topic(p).end()) continue;
      auto [percentage, tally] = topic_value(it->second);
      rows->push_back(Row(surface, std::string(TopicName(topic)), p.profile, percentage, tally));
    }
  }
  for (const ProfileResults& p : results.profiles) {
    if (per_topic(p).empty()) continue;
    ReportRow pooled{surface, "all", p.profile, 0.0, 0, 0};
    for (const auto& [topic, value] : per_topic(p)) {
      const UniqueTally tally = topic_value(value).second;
      pooled.unique_count += tally.all.size();
      pooled.pseudo_count += tally.pseudo.size();
    }
    if (pooled.unique_count > 0) {
      pooled.percentage = 100.0 * static_cast<double>(pooled.pseudo_count) /
                          static_cast<double>(pooled.unique_count);
    }
    rows->push_back(std::move(pooled));
  }
}

}  // namespace

double MeanPercentage(const std::map<std::string, UniqueTally>& per_query) {
  if (per_query.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [query, tally] : per_query) sum += tally.Percentage();
  return sum / static_cast<double>(per_query.size());
}

UniqueTally UnionTally(const std::map<std::string, UniqueTally>& per_query) {
  UniqueTally out;
  for (const auto& [query, tally] : per_query) out.Merge(tally);
  return out;
}

std::vector<double> HopPercentages(const std::map<std::string, std::vector<UniqueTally>>& walks) {
  std::vector<double> out;
  if (walks.empty()) return out;
  out.assign(walks.begin()->second.size(), 0.0);
  for (const auto& [query, hops] : walks) {
    for (size_t k = 0; k < out.size() && k < hops.size(); ++k) out[k] += hops[k].Percentage();
  }
  for (double& v : out) v /= static_cast<double>(walks.size());
  return out;
}

std::vector<ReportRow> ReportRows(const AuditResults& results) {
  std::vector<ReportRow> rows;
  for (const ProfileResults& p : results.profiles) {
    if (p.home.has_value()) rows.push_back(Row("home", "-", p.profile, p.home->Percentage(), *p.home));
  }
  SurfaceRows(
      results, "search", [](const ProfileResults& p) -> const auto& { return p.search; },
      [](const std::map<std::string, UniqueTally>& queries) {
        return std::make_pair(MeanPercentage(queries), UnionTally(queries));
      },
      &rows);
  SurfaceRows(
      results, "walks", [](const ProfileResults& p) -> const auto& { return p.walks; },
      [](const std::map<std::string, std::vector<UniqueTally>>& queries) {
        const std::vector<double> hops = HopPercentages(queries);
        UniqueTally last;
        for (const auto& [query, tallies] : queries) {
          if (!tallies.empty()) last.Merge(tallies.back());
        }
        return std::make_pair(hops.empty() ? 0.0 : hops.back(), last);
      },
      &rows);
  return rows;
}

std::string TableCsv(const AuditResults& results) {
  std::string out = "surface,topic,profile,percentage,unique_count\n";
  for (const ReportRow& r : ReportRows(results)) {
    absl::StrAppend(&out, absl::StrFormat("%s,%s,%s,%.4f,%d\n", r.surface, r.topic, r.profile,
                                          r.percentage, r.unique_count));
  }
  return out;
}

std::string HopsCsv(const AuditResults& results) {
  std::string out = "topic,profile,hop,percentage\n";
  for (Topic topic : kAuditedTopics) {
    for (const ProfileResults& p : results.profiles) {
      auto it = p.walks.find(topic);
      if (it == p.walks.end()) continue;
      const std::vector<double> hops = HopPercentages(it->second);
      for (size_t k = 0; k < hops.size(); ++k) {
        absl::StrAppend(&out, absl::StrFormat("%s,%s,%d,%.4f\n", std::string(TopicName(topic)),
                                              p.profile, k + 1, hops[k]));
      }
    }
  }
  return out;
}

ordered_json FisherJson(const AuditResults& results) {
  const std::vector<ReportRow> rows = ReportRows(results);
  ordered_json comparisons = ordered_json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = i + 1; j < rows.size(); ++j) {
      const ReportRow& a = rows[i];
      const ReportRow& b = rows[j];
      if (a.surface != b.surface || a.topic != b.topic) continue;
      ContingencyTable table = {{{a.pseudo_count, a.unique_count - a.pseudo_count},
                                 {b.pseudo_count, b.unique_count - b.pseudo_count}}};
      ordered_json c;
      c["surface"] = a.surface;
      c["topic"] = a.topic;
      c["profile_a"] = a.profile;
      c["profile_b"] = b.profile;
      c["table"] = {{table[0][0], table[0][1]}, {table[1][0], table[1][1]}};
      absl::StatusOr<double> p = FisherExactTwoSided(table);
      if (p.ok()) {
        c["p_value"] = *p;
        c["significant"] = *p < 0.05;
      } else {
        c["p_value"] = nullptr;
        c["significant"] = false;
        c["note"] = "zero margin";
      }
      comparisons.push_back(std::move(c));
    }
  }
  ordered_json out;
  out["test"] = "fisher-exact-two-sided";
  out["alpha"] = 0.05;
  out["comparisons"] = std::move(comparisons);
  return out;
}

ordered_json AuditResultsToJson(const AuditResults& results) {
  ordered_json profiles = ordered_json::array();
  for (const ProfileResults& p : results.profiles) {
    ordered_json j;
    j["profile"] = p.profile;
    j["home"] = p.home.has_value() ? TallyToJson(*p.home) : ordered_json(nullptr);
    ordered_json search = ordered_json::object();
    for (const auto& [topic, queries] : p.search) {
      ordered_json per_query = ordered_json::object();
      for (const auto& [query, tally] : queries) per_query[query] = TallyToJson(tally);
      search[std::string(TopicName(topic))] = std::move(per_query);
    }
    j["search"] = std::move(search);
    ordered_json walks = ordered_json::object();
    for (const auto& [topic, queries] : p.walks) {
      ordered_json per_query = ordered_json::object();
      for (const auto& [query, hops] : queries) {
        ordered_json list = ordered_json::array();
        for (const UniqueTally& t : hops) list.push_back(TallyToJson(t));
        per_query[query] = std::move(list);
      }
      walks[std::string(TopicName(topic))] = std::move(per_query);
    }
    j["walks"] = std::move(walks);
    j["walk_count"] = p.walk_count;
    j["truncated_walks"] = p.truncated_walks;
    profiles.push_back(std::move(j));
  }
  ordered_json out;
  out["profiles"] = std::move(profiles);
  return out;
}

absl::StatusOr<AuditResults> AuditResultsFromJson(const json& j) {
  if (!j.is_object() || !j.contains("profiles") || !j["profiles"].is_array()) {
    return absl::InvalidArgumentError("results need a 'profiles' array");
  }
  AuditResults results;
  for (const json& pj : j["profiles"]) {
    if (!pj.is_object() || !pj.contains("profile") || !pj["profile"].is_string()) {
      return absl::InvalidArgumentError("every profile result needs a 'profile' name");
    }
    ProfileResults p;
    p.profile = pj["profile"].get<std::string>();
    if (pj.contains("home") && !pj["home"].is_null()) {
      PA_ASSIGN_OR_RETURN(UniqueTally home, TallyFromJson(pj["home"]));
      p.home = std::move(home);
    }
    if (pj.contains("search")) {
      for (const auto& [topic_name, queries] : pj["search"].items()) {
        PA_ASSIGN_OR_RETURN(Topic topic, ParseTopic(topic_name));
        for (const auto& [query, tally] : queries.items()) {
          PA_ASSIGN_OR_RETURN(p.search[topic][query], TallyFromJson(tally));
        }
      }
    }
    if (pj.contains("walks")) {
      for (const auto& [topic_name, queries] : pj["walks"].items()) {
        PA_ASSIGN_OR_RETURN(Topic topic, ParseTopic(topic_name));
        for (const auto& [query, hops] : queries.items()) {
          if (!hops.is_array()) return absl::InvalidArgumentError("walk hops must be an array");
          std::vector<UniqueTally>& out = p.walks[topic][query];
          for (const json& t : hops) {
            PA_ASSIGN_OR_RETURN(UniqueTally tally, TallyFromJson(t));
            out.push_back(std::move(tally));
          }
        }
      }
    }
    if (pj.contains("walk_count")) p.walk_count = pj["walk_count"].get<size_t>();
    if (pj.contains("truncated_walks")) p.truncated_walks = pj["truncated_walks"].get<size_t>();
    results.profiles.push_back(std::move(p));
  }
  return results;
}

absl::Status EmitReport(const AuditResults& results, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return absl::InternalError(absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  PA_RETURN_IF_ERROR(WriteFileBytes(dir / "table.csv", TableCsv(results)));
  PA_RETURN_IF_ERROR(WriteFileBytes(dir / "hops.csv", HopsCsv(results)));
  PA_RETURN_IF_ERROR(WriteFileBytes(dir / "fisher.json", FisherJson(results).dump(2) + "\n"));
  PA_RETURN_IF_ERROR(
      WriteFileBytes(dir / "results.json", AuditResultsToJson(results).dump(1) + "\n"));
  return absl::OkStatus();
}

}  // namespace pseudoaudit
