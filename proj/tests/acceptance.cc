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

// Acceptance suite: one PASS/FAIL/VOID line per criterion. Exits 0 when
// criteria 1 to 8 pass; criterion 9 needs the released ground-truth data and
// never affects the exit code.

#include <algorithm>
#include <array>
#include <cmath>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "pseudoaudit/audit/stats.h"
#include "pseudoaudit/classifier/folds.h"
#include "pseudoaudit/classifier/metrics.h"
#include "pseudoaudit/classifier/smote.h"
#include "pseudoaudit/classifier/training.h"
#include "pseudoaudit/cli/commands.h"
#include "pseudoaudit/corpus/annotation.h"
#include "pseudoaudit/corpus/dataset_io.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/random.h"
#include "testing/oracles.h"

namespace pseudoaudit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Frozen from the seeded λ = 5 run on the reference universe.
constexpr int kPinnedWarmupLambda5 = 2;

enum class Verdict { kPass, kFail, kVoid };

struct Outcome {
  Verdict verdict = Verdict::kFail;
  std::string detail;
};

Outcome Pass(std::string detail) { return {Verdict::kPass, std::move(detail)}; }
Outcome Fail(std::string detail) { return {Verdict::kFail, std::move(detail)}; }

// Collects failed checks; the first few are kept for the report line.
class Checks {
 public:
  void Expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failures_.size() < 3) failures_.push_back(what);
  }
  int total() const { return total_; }
  bool ok() const { return failed_ == 0; }
  Outcome Finish(const std::string& summary) const {
    if (ok()) return Pass(summary);
    return Fail(absl::StrCat(failed_, "/", total_, " checks failed: ",
                             absl::StrJoin(failures_, "; ")));
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

struct ToolRun {
  int code = 0;
  std::string out;
  std::string err;
};

ToolRun Tool(std::vector<std::string> args) {
  args.insert(args.begin(), "pseudoaudit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  ToolRun r;
  r.code = RunTool(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReadOrEmpty(const fs::path& path) {
  absl::StatusOr<std::string> bytes = ReadFileBytes(path);
  return bytes.ok() ? *bytes : std::string();
}

std::string FirstLine(const std::string& text) { return text.substr(0, text.find('\n')); }

fs::path WriteConfig(const fs::path& dir, const json& doc) {
  fs::create_directories(dir);
  const fs::path path = dir / "config.json";
  (void)WriteFileBytes(path, doc.dump(2));
  return path;
}

// A simulator-only config on the reference universe with simulator labels.
json SimConfig(const fs::path& out_dir) {
  return {{"paths", {{"output_dir", out_dir.string()}}}, {"audit", {{"labels", "simulator"}}}};
}

// table.csv -> (surface/topic) -> profile -> percentage.
std::map<std::string, std::map<std::string, double>> TablePercentages(const std::string& csv) {
  std::map<std::string, std::map<std::string, double>> rows;
  std::vector<std::string> lines = absl::StrSplit(csv, '\n', absl::SkipEmpty());
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> f = absl::StrSplit(lines[i], ',');
    if (f.size() != 5) continue;
    rows[f[0] + "/" + f[1]][f[2]] = std::stod(f[3]);
  }
  return rows;
}

// ---------------------------------------------------------------------------

Outcome Criterion1() {
  Checks checks;
  Rng rng(20240101);
  int fleiss = 0;
  int overlap = 0;
  int fisher = 0;
  int confusion = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int items = 1 + static_cast<int>(rng.UniformIndex(20));
    const int categories = 2 + static_cast<int>(rng.UniformIndex(3));
    const int raters = 2 + static_cast<int>(rng.UniformIndex(4));
    CountMatrix m(items, std::vector<int>(categories, 0));
    for (auto& row : m) {
      for (int r = 0; r < raters; ++r) ++row[rng.UniformIndex(categories)];
    }
    absl::StatusOr<double> kappa = FleissKappa(m, raters);
    const double oracle = testing::OracleFleissKappa(m, raters);
    checks.Expect(kappa.ok() && std::abs(*kappa - oracle) <= 1e-9,
                  absl::StrCat("fleiss trial ", trial));
    ++fleiss;
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::string> a;
    std::set<std::string> b;
    const size_t na = 1 + rng.UniformIndex(12);
    const size_t nb = 1 + rng.UniformIndex(12);
    while (a.size() < na) a.insert(absl::StrCat("v", rng.UniformIndex(20)));
    while (b.size() < nb) b.insert(absl::StrCat("v", rng.UniformIndex(20)));
    absl::StatusOr<double> v = OverlapCoefficient(a, b);
    const double oracle = testing::OracleOverlap({a.begin(), a.end()}, {b.begin(), b.end()});
    checks.Expect(v.ok() && std::abs(*v - oracle) <= 1e-9, absl::StrCat("overlap trial ", trial));
    ++overlap;
  }
  while (fisher < 300) {
    uint64_t cells[4];
    const uint64_t total = 1 + rng.UniformIndex(40);
    // Random composition of `total` into four cells.
    uint64_t left = total;
    for (int i = 0; i < 3; ++i) {
      cells[i] = rng.UniformIndex(left + 1);
      left -= cells[i];
    }
    cells[3] = left;
    const uint64_t a = cells[0], b = cells[1], c = cells[2], d = cells[3];
    if (a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0) continue;
    absl::StatusOr<double> p = FisherExactTwoSided({{{a, b}, {c, d}}});
    const double oracle = testing::OracleFisher(a, b, c, d);
    checks.Expect(p.ok() && std::abs(*p - oracle) <= 1e-9,
                  absl::StrFormat("fisher [[%d,%d],[%d,%d]]", a, b, c, d));
    ++fisher;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.UniformIndex(20);
    std::vector<bool> truth(n);
    std::vector<bool> predicted(n);
    for (size_t i = 0; i < n; ++i) {
      truth[i] = rng.Uniform01() < 0.5;
      predicted[i] = rng.Uniform01() < 0.5;
    }
    const Metrics m = ComputeMetrics(truth, predicted);
    const testing::OracleConfusion c = testing::CountConfusion(truth, predicted);
    const testing::OracleWeighted w = testing::WeightedFromConfusion(c);
    checks.Expect(m.confusion.true_positives == static_cast<size_t>(c.tp) &&
                      m.confusion.false_positives == static_cast<size_t>(c.fp) &&
                      m.confusion.true_negatives == static_cast<size_t>(c.tn) &&
                      m.confusion.false_negatives == static_cast<size_t>(c.fn),
                  absl::StrCat("confusion counts trial ", trial));
    checks.Expect(std::abs(m.accuracy - w.accuracy) <= 1e-9 &&
                      std::abs(m.precision - w.precision) <= 1e-9 &&
                      std::abs(m.recall - w.recall) <= 1e-9 && std::abs(m.f1 - w.f1) <= 1e-9,
                  absl::StrCat("weighted metrics trial ", trial));
    ++confusion;
  }
  checks.Expect(fleiss >= 100 && overlap >= 100 && fisher >= 100 && confusion >= 100,
                "fewer than 100 instances for some statistic");
  return checks.Finish(absl::StrFormat("fleiss %d, overlap %d, fisher %d, metrics %d instances",
                                       fleiss, overlap, fisher, confusion));
}

Outcome Criterion2() {
  Checks checks;
  Rng rng(2);
  double worst = 0.0;
  int checked = 0;
  for (uint64_t draw = 0; draw < 20; ++draw) {
    const FusingNetwork net = testing::RandomNetwork(1000 + draw);
    Eigen::MatrixXd batch(FusingNetwork::kInputDim, 4);
    for (Eigen::Index c = 0; c < batch.cols(); ++c) {
      for (Eigen::Index i = 0; i < batch.rows(); ++i) batch(i, c) = rng.Uniform(-1.0, 1.0);
    }
    std::vector<int> labels(4);
    for (int& l : labels) l = static_cast<int>(rng.UniformIndex(2));
    const testing::GradientCheck check = testing::CheckGradients(net, batch, labels, 6, 1e-5, draw);
    worst = std::max(worst, check.max_relative_error);
    checked += check.checked;
    checks.Expect(check.checked > 0, absl::StrCat("draw ", draw, " checked nothing"));
    checks.Expect(check.max_relative_error < 1e-4,
                  absl::StrFormat("draw %d relative error %.3g", draw, check.max_relative_error));
  }
  return checks.Finish(
      absl::StrFormat("20 draws, %d coordinates, max relative error %.3g", checked, worst));
}

Outcome Criterion3(const fs::path& source, const fs::path& work) {
  const fs::path data = source / "data" / "separable";
  const fs::path out = work / "c3";
  json doc = {{"paths",
               {{"dataset", (data / "dataset.jsonl").string()},
                {"annotations", (data / "annotations.jsonl").string()},
                {"output_dir", out.string()}}}};
  const ToolRun r = Tool({"train", "-c", WriteConfig(work / "c3-config", doc).string()});
  if (r.code != kExitOk) return Fail(absl::StrCat("train exited ", r.code, ": ", FirstLine(r.err)));
  const json report = json::parse(ReadOrEmpty(out / "train_report.json"), nullptr, false);
  if (report.is_discarded()) return Fail("train_report.json missing or malformed");
  Checks checks;
  const double acc = report["pooled_at_0.5"]["accuracy"];
  const double acc_tuned = report["pooled_at_tuned_threshold"]["accuracy"];
  const double f1_half = report["pooled_at_0.5"]["f1"];
  const double f1_tuned = report["pooled_at_tuned_threshold"]["f1"];
  const double tuned = report["tuned_threshold"];
  checks.Expect(report["samples"] == 800, "expected 800 documents");
  checks.Expect(report["folds"].size() == 10, "expected 10 folds");
  checks.Expect(acc >= 0.95, absl::StrFormat("pooled accuracy %.4f < 0.95", acc));
  checks.Expect(acc_tuned >= 0.95, absl::StrFormat("accuracy at tuned threshold %.4f", acc_tuned));
  checks.Expect(f1_tuned >= f1_half,
                absl::StrFormat("tuned F1 %.4f < F1 at 0.5 %.4f", f1_tuned, f1_half));
  return checks.Finish(absl::StrFormat(
      "pooled accuracy %.4f at 0.5, %.4f at tuned threshold %.2f; F1 %.4f vs %.4f at 0.5", acc,
      acc_tuned, tuned, f1_tuned, f1_half));
}

std::vector<LabeledSample> Blobs(int pseudo, int other, uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledSample> out;
  for (int i = 0; i < pseudo + other; ++i) {
    LabeledSample s;
    s.id = absl::StrCat("s", i);
    s.pseudoscience = i < pseudo;
    for (auto& branch : s.features) {
      for (double& x : branch) x = (s.pseudoscience ? 0.2 : -0.2) + rng.StandardNormal();
    }
    out.push_back(std::move(s));
  }
  return out;
}

Outcome Criterion4() {
  Checks checks;
  Rng rng(4);
  // SMOTE: balanced counts and the minority bounding box.
  int smote_cases = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng.UniformIndex(12));
    const Eigen::Index minority_n = 2 + static_cast<Eigen::Index>(rng.UniformIndex(20));
    const Eigen::Index majority_n = minority_n + static_cast<Eigen::Index>(rng.UniformIndex(40));
    const int k = 1 + static_cast<int>(rng.UniformIndex(std::min<Eigen::Index>(5, minority_n - 1)));
    Eigen::MatrixXd minority(dim, minority_n);
    for (Eigen::Index c = 0; c < minority_n; ++c) {
      for (Eigen::Index r = 0; r < dim; ++r) minority(r, c) = rng.Uniform(-3.0, 3.0);
    }
    absl::StatusOr<Eigen::MatrixXd> synthetic = Smote(minority, k, majority_n, trial);
    if (!synthetic.ok()) {
      checks.Expect(false, absl::StrCat("smote trial ", trial, ": ", synthetic.status().message()));
      continue;
    }
    checks.Expect(minority_n + synthetic->cols() == majority_n,
                  absl::StrCat("smote trial ", trial, " class counts unequal"));
    checks.Expect(testing::InsideBoundingBox(*synthetic, minority),
                  absl::StrCat("smote trial ", trial, " left the bounding box"));
    ++smote_cases;
  }
  // Stratified folds: proportional class counts within one.
  int fold_cases = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 20 + static_cast<int>(rng.UniformIndex(200));
    const int k = 2 + static_cast<int>(rng.UniformIndex(9));
    std::vector<int> labels(n);
    for (int& l : labels) l = rng.Uniform01() < 0.3 ? 1 : 0;
    labels[0] = 1;
    labels[1] = 0;
    absl::StatusOr<std::vector<std::vector<size_t>>> folds = StratifiedFolds(labels, k, trial);
    if (!folds.ok()) {
      checks.Expect(false, absl::StrCat("folds trial ", trial, ": ", folds.status().message()));
      continue;
    }
    const double positives = std::count(labels.begin(), labels.end(), 1);
    std::vector<int> seen(n, 0);
    for (const std::vector<size_t>& fold : *folds) {
      size_t pos = 0;
      for (size_t i : fold) {
        pos += labels[i];
        ++seen[i];
      }
      const double expected_pos = positives * fold.size() / n;
      const double expected_neg = (n - positives) * fold.size() / n;
      checks.Expect(std::abs(pos - expected_pos) <= 1.0 &&
                        std::abs((fold.size() - pos) - expected_neg) <= 1.0,
                    absl::StrCat("folds trial ", trial, " not proportional"));
    }
    checks.Expect(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }),
                  absl::StrCat("folds trial ", trial, " not a partition"));
    ++fold_cases;
  }
  // Oversampling never touches test folds: track ids through training with
  // SMOTE on and off.
  const std::vector<LabeledSample> samples = Blobs(18, 42, 9);
  TrainConfig config;
  config.epochs = 3;
  config.folds = 5;
  config.train_final_model = false;
  TrainConfig without = config;
  without.use_smote = false;
  absl::StatusOr<TrainCvResult> a = TrainCrossValidated(samples, config);
  absl::StatusOr<TrainCvResult> b = TrainCrossValidated(samples, without);
  checks.Expect(a.ok() && b.ok(), "cross-validation failed");
  if (a.ok() && b.ok()) {
    std::map<std::string, int> tested;
    for (size_t f = 0; f < a->folds.size(); ++f) {
      const FoldReport& fa = a->folds[f];
      const FoldReport& fb = b->folds[f];
      std::vector<std::string> ids_a;
      std::vector<std::string> ids_b;
      for (size_t i : fa.test_indices) ids_a.push_back(samples[i].id);
      for (size_t i : fb.test_indices) ids_b.push_back(samples[i].id);
      for (const std::string& id : ids_a) ++tested[id];
      checks.Expect(ids_a == ids_b, absl::StrCat("fold ", f, " test ids differ with SMOTE"));
      checks.Expect(fa.metrics.confusion.total() == fa.test_indices.size(),
                    absl::StrCat("fold ", f, " scored synthetic points"));
      checks.Expect(fa.synthetic_count > 0 && fa.train_pseudo_count == fa.train_other_count,
                    absl::StrCat("fold ", f, " training classes not balanced"));
      for (size_t i : fa.train_indices) {
        checks.Expect(!std::binary_search(fa.test_indices.begin(), fa.test_indices.end(), i),
                      absl::StrCat("fold ", f, " trains on a test sample"));
      }
    }
    checks.Expect(tested.size() == samples.size() &&
                      std::all_of(tested.begin(), tested.end(),
                                  [](const auto& kv) { return kv.second == 1; }),
                  "some sample was tested other than once");
    checks.Expect(a->pooled.size() == samples.size(), "pooled predictions include synthetic points");
  }
  return checks.Finish(absl::StrFormat("%d SMOTE cases, %d fold splits, %d checks", smote_cases,
                                       fold_cases, checks.total()));
}

// Generates a universe under `dir` and runs the warm-up; returns W or -1.
int WarmupOnSimulator(const fs::path& dir, const json& simulator, std::string* error) {
  json doc = SimConfig(dir / "out");
  doc["simulator"] = simulator;
  const fs::path config = WriteConfig(dir, doc);
  ToolRun r = Tool({"sim-generate", "-c", config.string()});
  if (r.code == kExitOk) r = Tool({"audit", "warmup", "-c", config.string()});
  if (r.code != kExitOk) {
    *error = FirstLine(r.err);
    return -1;
  }
  const json j = json::parse(ReadOrEmpty(dir / "out" / "warmup.json"), nullptr, false);
  if (j.is_discarded() || !j["converged"].get<bool>()) {
    *error = "no convergence";
    return -1;
  }
  return j["watched"].get<int>();
}

Outcome Criterion5(const fs::path& work) {
  Checks checks;
  std::string error;
  const int stateless = WarmupOnSimulator(work / "c5-stateless", {{"kind", "stateless"}}, &error);
  checks.Expect(stateless == 1, absl::StrCat("stateless W = ", stateless, " ", error));
  const int zero = WarmupOnSimulator(work / "c5-lambda0", {{"lambda", 0.0}}, &error);
  checks.Expect(zero == 1, absl::StrCat("lambda 0 W = ", zero, " ", error));
  const int one = WarmupOnSimulator(work / "c5-lambda1", {{"lambda", 1.0}}, &error);
  const int five = WarmupOnSimulator(work / "c5-lambda5", {{"lambda", 5.0}}, &error);
  checks.Expect(five == kPinnedWarmupLambda5,
                absl::StrCat("lambda 5 W = ", five, ", pinned ", kPinnedWarmupLambda5));
  checks.Expect(one > 0 && five >= one, absl::StrCat("lambda 5 W ", five, " < lambda 1 W ", one));
  return checks.Finish(absl::StrFormat("W: stateless %d, lambda 0 %d, lambda 1 %d, lambda 5 %d",
                                       stateless, zero, one, five));
}

// Runs sim-generate then the three audit surfaces under `dir`. Returns the
// concatenated fisher comparisons and table percentages.
struct SurfaceRun {
  std::string error;
  std::vector<json> comparisons;
  std::map<std::string, std::map<std::string, double>> percentages;
};

SurfaceRun AuditSurfaces(const fs::path& dir, const json& doc,
                         const std::vector<std::string>& surfaces) {
  SurfaceRun run;
  const fs::path config = WriteConfig(dir, doc);
  ToolRun r = Tool({"sim-generate", "-c", config.string()});
  if (r.code != kExitOk) {
    run.error = absl::StrCat("sim-generate: ", FirstLine(r.err));
    return run;
  }
  for (const std::string& surface : surfaces) {
    r = Tool({"audit", surface, "-c", config.string()});
    if (r.code != kExitOk) {
      run.error = absl::StrCat("audit ", surface, ": ", FirstLine(r.err));
      return run;
    }
    const fs::path out = dir / "out" / ("audit-" + surface);
    const json fisher = json::parse(ReadOrEmpty(out / "fisher.json"), nullptr, false);
    if (fisher.is_discarded()) {
      run.error = absl::StrCat("audit ", surface, ": fisher.json missing");
      return run;
    }
    for (const json& c : fisher["comparisons"]) run.comparisons.push_back(c);
    for (auto& [row, values] : TablePercentages(ReadOrEmpty(out / "table.csv"))) {
      run.percentages[row] = values;
    }
  }
  return run;
}

json Profiles(const std::vector<std::array<std::string, 3>>& specs) {
  json out = json::array();
  for (const auto& [name, persona, platform] : specs) {
    out.push_back({{"name", name}, {"persona", persona}, {"platform", platform}});
  }
  return out;
}

Outcome Criterion6(const fs::path& work) {
  json doc = SimConfig(work / "c6" / "out");
  doc["simulator"] = {{"lambda", 5.0}};
  doc["experiment"] = {{"seeds", {0, 1, 2, 3, 4}},
                       {"walks_per_query", 50},
                       {"hops", 5},
                       {"branch", 10},
                       {"home_reps", 50},
                       {"home_n", 30},
                       {"search_reps", 50},
                       {"search_n", 20}};
  doc["profiles"] = Profiles({{"science", "science", "simulator"},
                              {"pseudoscience", "pseudoscience", "simulator"}});
  const SurfaceRun run = AuditSurfaces(work / "c6", doc, {"home", "search", "walks"});
  if (!run.error.empty()) return Fail(run.error);
  Checks checks;
  double max_p = 0.0;
  size_t rows = 0;
  for (const json& c : run.comparisons) {
    const std::string row = absl::StrCat(c["surface"].get<std::string>(), "/",
                                         c["topic"].get<std::string>());
    const auto& pct = run.percentages.at(row);
    const double p = c["p_value"];
    max_p = std::max(max_p, p);
    checks.Expect(pct.at("pseudoscience") >= pct.at("science"),
                  absl::StrFormat("%s: pseudoscience %.2f%% < science %.2f%%", row,
                                  pct.at("pseudoscience"), pct.at("science")));
    checks.Expect(p < 0.05, absl::StrFormat("%s: p = %.3g", row, p));
    ++rows;
  }
  checks.Expect(rows == 11, absl::StrCat("expected 11 compared rows, got ", rows));
  return checks.Finish(
      absl::StrFormat("%d surface/topic rows, pseudoscience >= science, max p = %.3g", rows, max_p));
}

Outcome Criterion7(const fs::path& work) {
  json doc = SimConfig(work / "c7" / "out");
  doc["simulator"] = {{"lambda", 0.0}};
  doc["experiment"] = {{"seeds", {0, 1, 2, 3, 4}}};
  doc["profiles"] =
      Profiles({{"no-profile", "none", "simulator"}, {"api", "none", "stateless"}});
  const SurfaceRun run = AuditSurfaces(work / "c7", doc, {"walks"});
  if (!run.error.empty()) return Fail(run.error);
  Checks checks;
  double min_p = 1.0;
  for (const json& c : run.comparisons) {
    const double p = c["p_value"];
    min_p = std::min(min_p, p);
    checks.Expect(p >= 0.05, absl::StrFormat("walks/%s: p = %.3g", c["topic"].get<std::string>(), p));
  }
  checks.Expect(run.comparisons.size() == 5,
                absl::StrCat("expected 5 walk rows, got ", run.comparisons.size()));
  return checks.Finish(
      absl::StrFormat("%d walk rows, min p = %.3g", run.comparisons.size(), min_p));
}

// Snapshot of every output a manifest lists, read relative to `root`.
std::map<std::string, std::string> Outputs(const fs::path& root, const fs::path& manifest) {
  std::map<std::string, std::string> out;
  const json m = json::parse(ReadOrEmpty(manifest), nullptr, false);
  if (m.is_discarded()) return out;
  for (const auto& [name, hash] : m["outputs"].items()) out[name] = ReadOrEmpty(root / name);
  return out;
}

Outcome Criterion8(const fs::path& source, const fs::path& work) {
  Checks checks;
  const fs::path first = work / "c8" / "first";
  const fs::path second = work / "c8" / "second";
  ToolRun r = Tool({"run", "-c", (source / "configs" / "reference.json").string(), "--out",
                    first.string()});
  if (r.code != kExitOk) return Fail(absl::StrCat("run: ", FirstLine(r.err)));
  r = Tool({"run", "--manifest", (first / "manifest.json").string(), "--out", second.string()});
  if (r.code != kExitOk) return Fail(absl::StrCat("rerun: ", FirstLine(r.err)));
  const auto a = Outputs(first, first / "manifest.json");
  const auto b = Outputs(second, second / "manifest.json");
  checks.Expect(!a.empty() && a.size() == b.size(), "manifests list different outputs");
  size_t compared = 0;
  for (const auto& [name, bytes] : a) {
    auto it = b.find(name);
    checks.Expect(it != b.end() && it->second == bytes && !bytes.empty(),
                  absl::StrCat("run: ", name, " differs"));
    ++compared;
  }
  // Single commands re-run in place from their own manifests.
  const fs::path audit_dir = work / "c7" / "out";
  for (const char* command : {"sim-generate", "walks"}) {
    const fs::path manifest = audit_dir / absl::StrCat("manifest-", command, ".json");
    const auto before = Outputs(audit_dir, manifest);
    std::vector<std::string> args = {"--manifest", manifest.string()};
    args.insert(args.begin(), command);
    if (std::string(command) == "walks") args.insert(args.begin(), "audit");
    r = Tool(args);
    checks.Expect(r.code == kExitOk, absl::StrCat(command, " rerun: ", FirstLine(r.err)));
    const auto after = Outputs(audit_dir, manifest);
    checks.Expect(!before.empty() && before == after, absl::StrCat(command, " outputs differ"));
    compared += before.size();
  }
  return checks.Finish(absl::StrCat(compared, " report files byte-identical across reruns"));
}

Outcome Criterion9(const std::string& real_data, const fs::path& work) {
  if (real_data.empty()) {
    return {Verdict::kVoid, "no released ground-truth dataset supplied (--real-data)"};
  }
  const fs::path dir(real_data);
  std::vector<std::string> warnings;
  absl::StatusOr<std::vector<VideoRecord>> videos = LoadDataset(dir / "dataset.jsonl", &warnings);
  if (!videos.ok()) return Fail(std::string(videos.status().message()));
  const bool has_text = std::any_of(videos->begin(), videos->end(), [](const VideoRecord& v) {
    return !v.transcript.empty() || !v.comments.empty();
  });
  if (!has_text) return {Verdict::kVoid, "dataset has no transcripts or comments"};
  json doc = {{"paths",
               {{"dataset", (dir / "dataset.jsonl").string()},
                {"annotations", (dir / "annotations.jsonl").string()},
                {"output_dir", (work / "c9").string()}}},
              {"classifier", {{"threshold", 0.7}}}};
  const ToolRun r = Tool({"train", "-c", WriteConfig(work / "c9-config", doc).string()});
  if (r.code != kExitOk) return Fail(absl::StrCat("train: ", FirstLine(r.err)));
  const json report = json::parse(ReadOrEmpty(work / "c9" / "train_report.json"), nullptr, false);
  if (report.is_discarded()) return Fail("train_report.json missing");
  const double acc = report["pooled_at_threshold"]["accuracy"];
  const std::string detail = absl::StrFormat("accuracy %.4f at 0.7, target 0.79 +/- 0.05", acc);
  return std::abs(acc - 0.79) <= 0.05 ? Pass(detail) : Fail(detail);
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    case Verdict::kVoid:
      return "VOID";
  }
  return "?";
}

int Main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for pseudoaudit", "acceptance"};
  std::string source = PA_SOURCE_DIR;
  std::string work = (fs::temp_directory_path() / "pa_acceptance").string();
  std::string real_data;
  std::vector<int> only;
  app.add_option("--source", source, "Source tree holding configs/ and data/");
  app.add_option("--work", work, "Scratch directory (wiped first)");
  app.add_option("--real-data", real_data,
                 "Directory with the released dataset.jsonl and annotations.jsonl");
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const fs::path work_dir(work);
  std::error_code ec;
  fs::remove_all(work_dir, ec);
  fs::create_directories(work_dir);

  struct Criterion {
    int number;
    double limit_s;  // 0 means no runtime bound
    std::function<Outcome()> run;
  };
  const fs::path src(source);
  const std::vector<Criterion> criteria = {
      {1, 10, [] { return Criterion1(); }},
      {2, 60, [] { return Criterion2(); }},
      {3, 300, [&] { return Criterion3(src, work_dir); }},
      {4, 0, [] { return Criterion4(); }},
      {5, 0, [&] { return Criterion5(work_dir); }},
      {6, 600, [&] { return Criterion6(work_dir); }},
      {7, 0, [&] { return Criterion7(work_dir); }},
      {8, 0, [&] { return Criterion8(src, work_dir); }},
      {9, 0, [&] { return Criterion9(real_data, work_dir); }},
  };
  bool ok = true;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.verdict == Verdict::kPass && c.limit_s > 0 && seconds >= c.limit_s) {
      outcome = Fail(absl::StrFormat("%s; took %.1f s, limit %.0f s", outcome.detail, seconds,
                                     c.limit_s));
    }
    if (c.number <= 8 && outcome.verdict != Verdict::kPass) ok = false;
    std::cout << absl::StrFormat("criterion %d: %s  %s (%.1f s)\n", c.number,
                                 VerdictName(outcome.verdict), outcome.detail, seconds)
              << std::flush;
  }
  return ok ? 0 : 1;
}

}  // namespace
}  // namespace pseudoaudit

int main(int argc, char** argv) { return pseudoaudit::Main(argc, argv); }
