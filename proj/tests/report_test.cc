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

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pseudoaudit/audit/experiments.h"
#include "pseudoaudit/audit/report.h"
#include "pseudoaudit/util/binary_io.h"

namespace pseudoaudit {
namespace {

// A tally of `total` ids named <prefix><i>, the first `pseudo` of them
// pseudoscientific.
UniqueTally Tally(const std::string& prefix, int total, int pseudo) {
  UniqueTally t;
  for (int i = 0; i < total; ++i) t.Add(prefix + std::to_string(i), i < pseudo);
  return t;
}

ProfileResults FullProfile(const std::string& name, int pseudo_bias) {
  ProfileResults p;
  p.profile = name;
  p.home = Tally("h", 40, 2 + pseudo_bias);
  for (const auto& [topic, queries] : DefaultTopicQueries()) {
    const std::string t(TopicName(topic));
    for (const std::string& q : queries) {
      p.search[topic][q] = Tally(t + q, 20, 1 + pseudo_bias);
      std::vector<UniqueTally> hops;
      for (int k = 1; k <= 5; ++k) hops.push_back(Tally(t + q + "w", 10 * k, k + pseudo_bias));
      p.walks[topic][q] = hops;
    }
  }
  p.walk_count = 250;
  return p;
}

AuditResults FourProfiles() {
  AuditResults r;
  r.profiles = {FullProfile("science", 0), FullProfile("pseudoscience", 3),
                FullProfile("mixed", 1), FullProfile("none", 0)};
  return r;
}

TEST(ReportRowsTest, TableShape) {
  const std::vector<ReportRow> rows = ReportRows(FourProfiles());
  ASSERT_EQ(rows.size(), 4u * 11u);
  std::map<std::string, int> per_profile;
  for (const ReportRow& r : rows) ++per_profile[r.profile];
  for (const auto& [profile, n] : per_profile) EXPECT_EQ(n, 11) << profile;
  // Surface-major: 4 home rows, then 20 search rows, then 20 walk rows.
  for (size_t i = 0; i < 4; ++i) EXPECT_EQ(rows[i].surface, "home");
  for (size_t i = 4; i < 24; ++i) EXPECT_EQ(rows[i].surface, "search");
  for (size_t i = 24; i < 44; ++i) EXPECT_EQ(rows[i].surface, "walks");
  EXPECT_EQ(rows[0].topic, "-");
  EXPECT_EQ(rows[4].topic, "covid19");
  EXPECT_EQ(rows[20].topic, "all");
  for (const ReportRow& r : rows) {
    EXPECT_GE(r.percentage, 0.0);
    EXPECT_LE(r.percentage, 100.0);
    EXPECT_LE(r.pseudo_count, r.unique_count);
  }
}

TEST(ReportRowsTest, SearchTopicIsMeanOfQueries) {
  AuditResults r;
  ProfileResults p;
  p.profile = "science";
  p.search[Topic::kCovid19]["a"] = Tally("a", 10, 1);  // 10%
  p.search[Topic::kCovid19]["b"] = Tally("b", 10, 2);  // 20%
  p.search[Topic::kFlatEarth]["c"] = Tally("c", 8, 2);  // 25%
  r.profiles.push_back(p);
  const std::vector<ReportRow> rows = ReportRows(r);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].topic, "covid19");
  EXPECT_DOUBLE_EQ(rows[0].percentage, 15.0);
  EXPECT_EQ(rows[0].unique_count, 20u);
  EXPECT_EQ(rows[1].topic, "flatearth");
  EXPECT_DOUBLE_EQ(rows[1].percentage, 25.0);
  EXPECT_EQ(rows[2].topic, "all");
  EXPECT_EQ(rows[2].unique_count, 28u);
  EXPECT_EQ(rows[2].pseudo_count, 5u);
  EXPECT_DOUBLE_EQ(rows[2].percentage, 100.0 * 5 / 28);
}

TEST(ReportRowsTest, WalkRowUsesLastHop) {
  AuditResults r;
  ProfileResults p;
  p.profile = "pseudoscience";
  p.walks[Topic::kAntiMask]["q"] = {Tally("x", 2, 1), Tally("x", 4, 1)};
  r.profiles.push_back(p);
  const std::vector<ReportRow> rows = ReportRows(r);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].percentage, 25.0);
  EXPECT_EQ(HopPercentages(p.walks[Topic::kAntiMask]), (std::vector<double>{50.0, 25.0}));
}

TEST(ReportRowsTest, HomeOnly) {
  AuditResults r;
  for (const char* name : {"science", "pseudoscience"}) {
    ProfileResults p;
    p.profile = name;
    p.home = Tally("h", 30, 3);
    r.profiles.push_back(p);
  }
  const std::string csv = TableCsv(r);
  EXPECT_EQ(csv,
            "surface,topic,profile,percentage,unique_count\n"
            "home,-,science,10.0000,30\n"
            "home,-,pseudoscience,10.0000,30\n");
  EXPECT_EQ(HopsCsv(r), "topic,profile,hop,percentage\n");
}

TEST(HopsCsvTest, FiveHopsPerTopicAndProfile) {
  const std::string csv = HopsCsv(FourProfiles());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 4 * 5);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "topic,profile,hop,percentage");
}

TEST(FisherJsonTest, EveryProfilePairPerRow) {
  const nlohmann::ordered_json j = FisherJson(FourProfiles());
  EXPECT_EQ(j["comparisons"].size(), 11u * 6u);
  for (const auto& c : j["comparisons"]) {
    const uint64_t a = c["table"][0][0];
    const uint64_t b = c["table"][0][1];
    EXPECT_GE(a + b, 1u);
    EXPECT_TRUE(c["p_value"].is_number());
    EXPECT_EQ(c["significant"].get<bool>(), c["p_value"].get<double>() < 0.05);
  }
}

TEST(ResultsJsonTest, RoundTrip) {
  const AuditResults r = FourProfiles();
  const nlohmann::ordered_json j = AuditResultsToJson(r);
  auto back = AuditResultsFromJson(nlohmann::json::parse(j.dump()));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(AuditResultsToJson(*back).dump(), j.dump());
  EXPECT_EQ(TableCsv(*back), TableCsv(r));
}

TEST(EmitReportTest, ByteIdenticalReemit) {
  const auto base = std::filesystem::temp_directory_path() / "pa_report_test";
  std::filesystem::remove_all(base);
  const AuditResults r = FourProfiles();
  ASSERT_TRUE(EmitReport(r, base / "a").ok());
  ASSERT_TRUE(EmitReport(r, base / "b").ok());
  for (const char* name : {"table.csv", "hops.csv", "fisher.json", "results.json"}) {
    auto a = ReadFileBytes(base / "a" / name);
    auto b = ReadFileBytes(base / "b" / name);
    ASSERT_TRUE(a.ok() && b.ok()) << name;
    EXPECT_EQ(*a, *b) << name;
    EXPECT_FALSE(a->empty());
  }
  std::filesystem::remove_all(base);
}

}  // namespace
}  // namespace pseudoaudit
