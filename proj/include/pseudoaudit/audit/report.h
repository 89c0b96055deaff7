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

#ifndef PSEUDOAUDIT_AUDIT_REPORT_H_
#define PSEUDOAUDIT_AUDIT_REPORT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "pseudoaudit/audit/experiments.h"

namespace pseudoaudit {

// Mean of the per-query percentages.
double MeanPercentage(const std::map<std::string, UniqueTally>& per_query);

// Union of the per-query tallies.
UniqueTally UnionTally(const std::map<std::string, UniqueTally>& per_query);

// Per-hop percentage of a topic: mean over queries at every hop.
std::vector<double> HopPercentages(const std::map<std::string, std::vector<UniqueTally>>& walks);

struct ReportRow {
  std::string surface;  // home, search or walks
  std::string topic;    // a topic name, "all", or "-" for the homepage
  std::string profile;
  double percentage = 0.0;
  size_t unique_count = 0;
  size_t pseudo_count = 0;
};

// Surface-major rows. A topic row averages its queries; walk rows use the
// last hop. The "all" row sums the unique and pseudoscience counts of the
// topic rows.
std::vector<ReportRow> ReportRows(const AuditResults& results);

// surface,topic,profile,percentage,unique_count
std::string TableCsv(const AuditResults& results);

// topic,profile,hop,percentage
std::string HopsCsv(const AuditResults& results);

// Fisher exact tests between every pair of profiles on each table row's
// (pseudoscience, other) unique counts.
nlohmann::ordered_json FisherJson(const AuditResults& results);

nlohmann::ordered_json AuditResultsToJson(const AuditResults& results);
absl::StatusOr<AuditResults> AuditResultsFromJson(const nlohmann::json& j);

// Writes table.csv, hops.csv, fisher.json and results.json into `dir`.
absl::Status EmitReport(const AuditResults& results, const std::filesystem::path& dir);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_AUDIT_REPORT_H_
