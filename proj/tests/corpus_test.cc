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
#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "pseudoaudit/corpus/annotation.h"
#include "pseudoaudit/corpus/dataset_io.h"
#include "pseudoaudit/corpus/synthetic.h"
#include "pseudoaudit/util/random.h"
#include "testing/oracles.h"

namespace pseudoaudit {
namespace {

using ::testing::HasSubstr;

constexpr char kRecord[] =
    R"({"id":"v1","title":"t","description":"d","tags":["a","b"],"transcript":"x",)"
    R"("comments":["c"],"views":3,"likes":2,"comment_count":1,"duration_s":60,"topic":"flatearth"})";

TEST(LoadDatasetTest, EmptyFileIsEmptyList) {
  auto videos = ParseDataset("", "mem");
  ASSERT_TRUE(videos.ok());
  EXPECT_TRUE(videos->empty());
}

TEST(LoadDatasetTest, OneRecord) {
  auto videos = ParseDataset(kRecord, "mem");
  ASSERT_TRUE(videos.ok()) << videos.status();
  ASSERT_EQ(videos->size(), 1u);
  const VideoRecord& v = (*videos)[0];
  EXPECT_EQ(v.id, "v1");
  EXPECT_EQ(v.title, "t");
  EXPECT_EQ(v.description, "d");
  EXPECT_EQ(v.tags, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(v.transcript, "x");
  EXPECT_EQ(v.comments, std::vector<std::string>{"c"});
  EXPECT_EQ(v.views, 3u);
  EXPECT_EQ(v.likes, 2u);
  EXPECT_EQ(v.comment_count, 1u);
  EXPECT_EQ(v.duration_s, 60u);
  EXPECT_EQ(v.topic, Topic::kFlatEarth);
}

TEST(LoadDatasetTest, DuplicateIdNamed) {
  const std::string text = std::string(kRecord) + "\n" + kRecord + "\n";
  auto videos = ParseDataset(text, "mem");
  ASSERT_FALSE(videos.ok());
  EXPECT_THAT(std::string(videos.status().message()), HasSubstr("'v1'"));
}

TEST(LoadDatasetTest, MalformedLineReportsLineNumber) {
  const std::string text = std::string(kRecord) + "\n{not json\n";
  auto videos = ParseDataset(text, "mem");
  ASSERT_FALSE(videos.ok());
  EXPECT_THAT(std::string(videos.status().message()), HasSubstr(":2"));
}

TEST(LoadDatasetTest, NegativeCountRejected) {
  auto videos = ParseDataset(R"({"id":"v","title":"","description":"","duration_s":1,)"
                             R"("topic":"none","views":-1})",
                             "mem");
  ASSERT_FALSE(videos.ok());
  EXPECT_THAT(std::string(videos.status().message()), HasSubstr("views"));
}

TEST(LoadDatasetTest, TooManyCommentsRejected) {
  nlohmann::json j = nlohmann::json::parse(kRecord);
  j["comments"] = std::vector<std::string>(201, "c");
  EXPECT_FALSE(ParseDataset(j.dump(), "mem").ok());
  j["comments"] = std::vector<std::string>(200, "c");
  EXPECT_TRUE(ParseDataset(j.dump(), "mem").ok());
}

TEST(LoadDatasetTest, NonPositiveDurationRejected) {
  nlohmann::json j = nlohmann::json::parse(kRecord);
  j["duration_s"] = 0;
  EXPECT_FALSE(ParseDataset(j.dump(), "mem").ok());
}

TEST(LoadDatasetTest, OptionalFieldsDefault) {
  auto videos = ParseDataset(R"({"id":"v","title":"a","description":"b","duration_s":5,)"
                             R"("topic":"covid19"})",
                             "mem");
  ASSERT_TRUE(videos.ok()) << videos.status();
  EXPECT_EQ((*videos)[0].views, 0u);
  EXPECT_TRUE((*videos)[0].tags.empty());
  EXPECT_TRUE((*videos)[0].transcript.empty());
}

TEST(LoadDatasetTest, UnknownFieldWarns) {
  nlohmann::json j = nlohmann::json::parse(kRecord);
  j["channel"] = "x";
  std::vector<std::string> warnings;
  auto videos = ParseDataset(j.dump(), "mem", &warnings);
  ASSERT_TRUE(videos.ok());
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_THAT(warnings[0], HasSubstr("channel"));
}

TEST(LoadDatasetTest, SaveLoadRoundTrip) {
  SyntheticCorpusOptions options;
  options.science = 3;
  options.pseudoscience = 3;
  options.irrelevant = 3;
  const SyntheticCorpus corpus = GenerateSyntheticCorpus(options);
  const auto path = std::filesystem::temp_directory_path() / "pa_corpus_rt.jsonl";
  ASSERT_TRUE(SaveDataset(path, corpus.videos).ok());
  auto loaded = LoadDataset(path);
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(*loaded, corpus.videos);
  std::filesystem::remove(path);
}

TEST(QualificationGateTest, Examples) {
  const bool pass3[] = {true, true, true, false, false};
  const bool fail2[] = {true, true, false, false, false};
  const bool all[] = {true, true, true, true, true};
  EXPECT_TRUE(QualificationGate("a", pass3)->passed);
  EXPECT_FALSE(QualificationGate("a", fail2)->passed);
  EXPECT_TRUE(QualificationGate("a", all)->passed);
}

TEST(QualificationGateTest, WrongLength) {
  const bool four[] = {true, true, true, true};
  EXPECT_FALSE(QualificationGate("a", four).ok());
}

TEST(QualificationGateTest, PassedIffAtLeastThree) {
  for (int mask = 0; mask < 32; ++mask) {
    bool answers[5];
    int correct = 0;
    for (int i = 0; i < 5; ++i) {
      answers[i] = (mask >> i) & 1;
      correct += answers[i];
    }
    EXPECT_EQ(QualificationGate("a", answers)->passed, correct >= 3) << mask;
  }
}

std::vector<AnnotationRecord> Annotate(const std::string& id, RawLabel a, RawLabel b,
                                       RawLabel c) {
  return {{id, "x", a}, {id, "y", b}, {id, "z", c}};
}

TEST(AggregateLabelsTest, Examples) {
  std::vector<AnnotationRecord> all;
  for (auto v : {Annotate("m", RawLabel::kPseudoscience, RawLabel::kPseudoscience,
                          RawLabel::kScience),
                 Annotate("e", RawLabel::kScience, RawLabel::kIrrelevant, RawLabel::kPseudoscience),
                 Annotate("c", RawLabel::kScience, RawLabel::kScience, RawLabel::kIrrelevant)}) {
    all.insert(all.end(), v.begin(), v.end());
  }
  auto result = AggregateLabels(all);
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result->entries.size(), 2u);
  EXPECT_EQ(result->excluded, std::vector<std::string>{"e"});
  // Entries are ordered by id: "c" then "m".
  EXPECT_EQ(result->entries[0].video_id, "c");
  EXPECT_EQ(result->entries[0].raw_majority, RawLabel::kScience);
  EXPECT_EQ(result->entries[0].label, BinaryLabel::kOther);
  EXPECT_EQ(result->entries[1].video_id, "m");
  EXPECT_EQ(result->entries[1].label, BinaryLabel::kPseudoscience);
}

TEST(AggregateLabelsTest, RequiresExactlyThree) {
  std::vector<AnnotationRecord> two = {{"v", "a", RawLabel::kScience},
                                       {"v", "b", RawLabel::kScience}};
  EXPECT_FALSE(AggregateLabels(two).ok());
  auto four = Annotate("v", RawLabel::kScience, RawLabel::kScience, RawLabel::kScience);
  four.push_back({"v", "w", RawLabel::kScience});
  EXPECT_FALSE(AggregateLabels(four).ok());
}

TEST(AggregateLabelsTest, CountsAndPermutationInvariance) {
  Rng rng(17);
  const RawLabel labels[] = {RawLabel::kScience, RawLabel::kPseudoscience, RawLabel::kIrrelevant};
  std::vector<AnnotationRecord> all;
  for (int v = 0; v < 200; ++v) {
    auto a = Annotate("v" + std::to_string(v), labels[rng.UniformIndex(3)],
                      labels[rng.UniformIndex(3)], labels[rng.UniformIndex(3)]);
    all.insert(all.end(), a.begin(), a.end());
  }
  auto base = AggregateLabels(all);
  ASSERT_TRUE(base.ok());
  EXPECT_EQ(base->entries.size() + base->excluded.size(), 200u);
  for (const GroundTruthEntry& e : base->entries) {
    EXPECT_EQ(e.label == BinaryLabel::kPseudoscience, e.raw_majority == RawLabel::kPseudoscience);
  }
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<AnnotationRecord> shuffled = all;
    rng.Shuffle(std::span<AnnotationRecord>(shuffled));
    auto again = AggregateLabels(shuffled);
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(again->entries, base->entries);
    EXPECT_EQ(again->excluded, base->excluded);
  }
}

TEST(FleissKappaTest, UnanimousItemsGiveOne) {
  const CountMatrix m = {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {3, 0, 0}};
  EXPECT_DOUBLE_EQ(*FleissKappa(m, 3), 1.0);
}

TEST(FleissKappaTest, SingleCategoryEverywhereIsOne) {
  const CountMatrix m = {{3, 0}, {3, 0}};
  EXPECT_DOUBLE_EQ(*FleissKappa(m, 3), 1.0);
}

TEST(FleissKappaTest, TwoItemsTwoRaters) {
  // Items (A,A) and (A,B). By hand: P1 = 1, P2 = 0, Pbar = 1/2;
  // pA = 3/4, pB = 1/4, Pe = 10/16; kappa = (1/2 - 5/8) / (3/8) = -1/3.
  const CountMatrix m = {{2, 0}, {1, 1}};
  EXPECT_NEAR(*FleissKappa(m, 2), -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(testing::OracleFleissKappa(m, 2), -1.0 / 3.0, 1e-12);
}

TEST(FleissKappaTest, Errors) {
  EXPECT_FALSE(FleissKappa({{2, 0}, {1, 0}}, 2).ok());  // row sum
  EXPECT_FALSE(FleissKappa({{1, 0}}, 1).ok());          // one rater
  EXPECT_FALSE(FleissKappa({}, 3).ok());                // no items
}

TEST(FleissKappaTest, MatchesOracleOnRandomMatrices) {
  Rng rng(2024);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int items = 1 + static_cast<int>(rng.UniformIndex(20));
    const int categories = 2 + static_cast<int>(rng.UniformIndex(3));
    const int raters = 2 + static_cast<int>(rng.UniformIndex(4));
    CountMatrix m(items, std::vector<int>(categories, 0));
    for (auto& row : m) {
      for (int r = 0; r < raters; ++r) ++row[rng.UniformIndex(categories)];
    }
    auto kappa = FleissKappa(m, raters);
    const double oracle = testing::OracleFleissKappa(m, raters);
    if (!kappa.ok()) continue;  // the undefined degenerate case
    EXPECT_NEAR(*kappa, oracle, 1e-9);
    ++compared;
  }
  EXPECT_GE(compared, 100);
}

TEST(FleissKappaTest, HundredThreeRaterItems) {
  Rng rng(100);
  CountMatrix m(100, std::vector<int>(3, 0));
  for (auto& row : m) {
    for (int r = 0; r < 3; ++r) ++row[rng.UniformIndex(3)];
  }
  EXPECT_NEAR(*FleissKappa(m, 3), testing::OracleFleissKappa(m, 3), 1e-9);
}

TEST(FleissKappaTest, PermutationInvariant) {
  Rng rng(8);
  CountMatrix m(30, std::vector<int>(3, 0));
  for (auto& row : m) {
    for (int r = 0; r < 3; ++r) ++row[rng.UniformIndex(3)];
  }
  const double base = *FleissKappa(m, 3);
  CountMatrix items = m;
  rng.Shuffle(std::span<std::vector<int>>(items));
  EXPECT_NEAR(*FleissKappa(items, 3), base, 1e-12);
  CountMatrix cats = m;
  for (auto& row : cats) std::swap(row[0], row[2]);
  EXPECT_NEAR(*FleissKappa(cats, 3), base, 1e-12);
}

TEST(AnnotationCountMatrixTest, RowsPerVideoInIdOrder) {
  auto a = Annotate("b", RawLabel::kScience, RawLabel::kScience, RawLabel::kIrrelevant);
  auto b = Annotate("a", RawLabel::kPseudoscience, RawLabel::kScience, RawLabel::kIrrelevant);
  a.insert(a.end(), b.begin(), b.end());
  auto m = AnnotationCountMatrix(a);
  ASSERT_TRUE(m.ok());
  ASSERT_EQ(m->size(), 2u);
  EXPECT_EQ((*m)[0], (std::vector<int>{1, 1, 1}));
  EXPECT_EQ((*m)[1], (std::vector<int>{2, 0, 1}));
}

std::map<std::string, BinaryLabel> Labels(const std::vector<bool>& positive) {
  std::map<std::string, BinaryLabel> out;
  for (size_t i = 0; i < positive.size(); ++i) {
    out["v" + std::to_string(1000 + i)] =
        positive[i] ? BinaryLabel::kPseudoscience : BinaryLabel::kOther;
  }
  return out;
}

TEST(EvaluateAgainstExpertTest, IdenticalLabels) {
  const auto labels = Labels({true, false, true, false});
  auto r = EvaluateAgainstExpert(labels, labels);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r->precision, 1.0);
  EXPECT_EQ(*r->recall, 1.0);
  EXPECT_EQ(*r->f1, 1.0);
}

TEST(EvaluateAgainstExpertTest, AllPositiveCrowd) {
  auto r = EvaluateAgainstExpert(Labels({true, true, true, true}),
                                 Labels({true, false, true, false}));
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(*r->precision, 0.5);
  EXPECT_DOUBLE_EQ(*r->recall, 1.0);
}

TEST(EvaluateAgainstExpertTest, UndefinedNotZero) {
  auto r = EvaluateAgainstExpert(Labels({false, false}), Labels({false, false}));
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->precision.has_value());
  EXPECT_FALSE(r->recall.has_value());
  EXPECT_FALSE(r->f1.has_value());
}

TEST(EvaluateAgainstExpertTest, MismatchedIds) {
  auto crowd = Labels({true, false});
  auto expert = crowd;
  expert.erase(expert.begin());
  expert["other"] = BinaryLabel::kOther;
  EXPECT_FALSE(EvaluateAgainstExpert(crowd, expert).ok());
}

TEST(EvaluateAgainstExpertTest, MatchesCountingOracle) {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<bool> crowd(200);
    std::vector<bool> expert(200);
    for (int i = 0; i < 200; ++i) {
      crowd[i] = rng.Uniform01() < 0.4;
      expert[i] = rng.Uniform01() < 0.4;
    }
    auto r = EvaluateAgainstExpert(Labels(crowd), Labels(expert));
    ASSERT_TRUE(r.ok());
    const testing::OracleConfusion c = testing::CountConfusion(expert, crowd);
    EXPECT_EQ(r->true_positives, c.tp);
    EXPECT_EQ(r->false_positives, c.fp);
    EXPECT_EQ(r->true_negatives, c.tn);
    EXPECT_EQ(r->false_negatives, c.fn);
    const double p = static_cast<double>(c.tp) / (c.tp + c.fp);
    const double rec = static_cast<double>(c.tp) / (c.tp + c.fn);
    EXPECT_DOUBLE_EQ(*r->precision, p);
    EXPECT_DOUBLE_EQ(*r->recall, rec);
    EXPECT_NEAR(*r->f1, 2 * p * rec / (p + rec), 1e-15);
  }
}

TEST(SyntheticCorpusTest, DeterministicAndComplete) {
  SyntheticCorpusOptions options;
  options.science = 5;
  options.pseudoscience = 7;
  options.irrelevant = 4;
  const SyntheticCorpus a = GenerateSyntheticCorpus(options);
  const SyntheticCorpus b = GenerateSyntheticCorpus(options);
  EXPECT_EQ(a.videos, b.videos);
  EXPECT_EQ(a.videos.size(), 16u);
  EXPECT_EQ(a.annotations.size(), 48u);
  auto aggregated = AggregateLabels(a.annotations);
  ASSERT_TRUE(aggregated.ok());
  // Perfect annotators reproduce the latent label.
  for (const GroundTruthEntry& e : aggregated->entries) {
    EXPECT_EQ(e.raw_majority, a.latent.at(e.video_id));
  }
}

}  // namespace
}  // namespace pseudoaudit
