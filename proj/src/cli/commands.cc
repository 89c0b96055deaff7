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

#include "pseudoaudit/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "pseudoaudit/audit/experiments.h"
#include "pseudoaudit/audit/profiles.h"
#include "pseudoaudit/audit/report.h"
#include "pseudoaudit/audit/warmup.h"
#include "pseudoaudit/classifier/metrics.h"
#include "pseudoaudit/classifier/model_io.h"
#include "pseudoaudit/classifier/prediction.h"
#include "pseudoaudit/classifier/training.h"
#include "pseudoaudit/cli/run_config.h"
#include "pseudoaudit/corpus/annotation.h"
#include "pseudoaudit/corpus/dataset_io.h"
#include "pseudoaudit/corpus/synthetic.h"
#include "pseudoaudit/platform/sim_config_io.h"
#include "pseudoaudit/platform/universe.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/random.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kClassifierFile[] = "classifier.bin";

std::string Hex64(uint64_t v) { return absl::StrFormat("%016x", v); }

// Every write goes through here; `relative` is resolved under output_dir.
class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {}

  absl::Status Write(const fs::path& relative, std::string_view bytes) {
    const fs::path path = root_ / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      return absl::InternalError(
          absl::StrCat("cannot create ", path.parent_path().string(), ": ", ec.message()));
    }
    PA_RETURN_IF_ERROR(WriteFileBytes(path, bytes));
    written_[relative.generic_string()] = Hex64(Fnv1a64(bytes));
    return absl::OkStatus();
  }

  const fs::path& root() const { return root_; }
  const std::map<std::string, std::string>& written() const { return written_; }

 private:
  fs::path root_;
  std::map<std::string, std::string> written_;
};

// Stage failures are reported with the stage name.
absl::Status InStage(std::string_view stage, absl::Status status) {
  if (status.ok()) return status;
  return absl::Status(status.code(), absl::StrCat(std::string(stage), ": ", status.message()));
}

#define PA_STAGE(stage, expr) PA_RETURN_IF_ERROR(InStage(stage, (expr)))

template <typename T>
absl::StatusOr<T> InStage(std::string_view stage, absl::StatusOr<T> value) {
  if (value.ok()) return value;
  return InStage(stage, value.status());
}

ordered_json ClassMetricsJson(const ClassMetrics& m) {
  ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["support"] = m.support;
  return j;
}

ordered_json MetricsJson(const Metrics& m) {
  ordered_json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["pseudoscience"] = ClassMetricsJson(m.pseudoscience);
  j["other"] = ClassMetricsJson(m.other);
  j["confusion"] = {{"true_positives", m.confusion.true_positives},
                    {"false_positives", m.confusion.false_positives},
                    {"true_negatives", m.confusion.true_negatives},
                    {"false_negatives", m.confusion.false_negatives}};
  return j;
}

// ---------------------------------------------------------------------------
// Stages

struct Corpus {
  std::vector<VideoRecord> videos;
  AggregationResult aggregation;
};

absl::StatusOr<Corpus> LoadCorpus(const RunConfig& config, std::ostream& err) {
  Corpus corpus;
  std::vector<std::string> warnings;
  PA_ASSIGN_OR_RETURN(corpus.videos, LoadDataset(config.paths.dataset, &warnings));
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  PA_ASSIGN_OR_RETURN(std::vector<AnnotationRecord> annotations,
                      LoadAnnotations(config.paths.annotations));
  PA_ASSIGN_OR_RETURN(corpus.aggregation, AggregateLabels(annotations));
  return corpus;
}

absl::StatusOr<std::map<std::string, BinaryLabel>> LoadExpertLabels(const fs::path& path) {
  PA_ASSIGN_OR_RETURN(std::string text, ReadFileBytes(path));
  std::map<std::string, BinaryLabel> out;
  std::istringstream in(text);
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("video_id") ||
        !j["video_id"].is_string() || !j.contains("label") || !j["label"].is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path.string(), ":", line_no, ": expected string video_id and label"));
    }
    auto label = ParseBinaryLabel(j["label"].get<std::string>());
    if (!label.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path.string(), ":", line_no, ": ", label.status().message()));
    }
    out[j["video_id"].get<std::string>()] = *label;
  }
  return out;
}

absl::Status StageAggregate(const RunConfig& config, OutputDir& out_dir, std::ostream& out,
                            AggregationResult* result) {
  PA_ASSIGN_OR_RETURN(std::vector<AnnotationRecord> annotations,
                      LoadAnnotations(config.paths.annotations));
  PA_ASSIGN_OR_RETURN(*result, AggregateLabels(annotations));
  PA_ASSIGN_OR_RETURN(CountMatrix counts, AnnotationCountMatrix(annotations));
  ordered_json report;
  report["videos"] = result->entries.size() + result->excluded.size();
  report["labeled"] = result->entries.size();
  report["excluded"] = result->excluded;
  std::map<std::string, size_t> raw;
  size_t pseudo = 0;
  for (const GroundTruthEntry& e : result->entries) {
    ++raw[std::string(RawLabelName(e.raw_majority))];
    if (e.label == BinaryLabel::kPseudoscience) ++pseudo;
  }
  report["raw_majority_counts"] = raw;
  report["binary_counts"] = {{"pseudoscience", pseudo},
                             {"other", result->entries.size() - pseudo}};
  absl::StatusOr<double> kappa = FleissKappa(counts, kAnnotationsPerVideo);
  report["fleiss_kappa"] = kappa.ok() ? ordered_json(*kappa) : ordered_json(nullptr);
  if (!config.paths.expert_labels.empty()) {
    PA_ASSIGN_OR_RETURN(auto expert, LoadExpertLabels(config.paths.expert_labels));
    std::map<std::string, BinaryLabel> crowd;
    for (const GroundTruthEntry& e : result->entries) {
      if (expert.contains(e.video_id)) crowd[e.video_id] = e.label;
    }
    PA_ASSIGN_OR_RETURN(ExpertAgreement agreement, EvaluateAgainstExpert(crowd, expert));
    auto opt = [](const std::optional<double>& v) {
      return v.has_value() ? ordered_json(*v) : ordered_json(nullptr);
    };
    report["expert"] = {{"precision", opt(agreement.precision)},
                        {"recall", opt(agreement.recall)},
                        {"f1", opt(agreement.f1)},
                        {"videos", expert.size()}};
  }
  PA_RETURN_IF_ERROR(out_dir.Write("aggregation.json", report.dump(2) + "\n"));
  std::string gt;
  for (const GroundTruthEntry& e : result->entries) {
    ordered_json j;
    j["video_id"] = e.video_id;
    j["raw_majority"] = std::string(RawLabelName(e.raw_majority));
    j["label"] = std::string(BinaryLabelName(e.label));
    absl::StrAppend(&gt, j.dump(), "\n");
  }
  PA_RETURN_IF_ERROR(out_dir.Write("ground_truth.jsonl", gt));
  out << "labeled " << result->entries.size() << " videos, excluded " << result->excluded.size()
      << "\n";
  return absl::OkStatus();
}

// Videos with a ground-truth entry, in dataset order.
absl::StatusOr<std::vector<std::pair<const VideoRecord*, bool>>> LabeledVideos(
    const Corpus& corpus) {
  std::map<std::string, bool> labels;
  for (const GroundTruthEntry& e : corpus.aggregation.entries) {
    labels[e.video_id] = e.label == BinaryLabel::kPseudoscience;
  }
  std::vector<std::pair<const VideoRecord*, bool>> out;
  std::set<std::string> found;
  for (const VideoRecord& v : corpus.videos) {
    auto it = labels.find(v.id);
    if (it == labels.end()) continue;
    out.emplace_back(&v, it->second);
    found.insert(v.id);
  }
  for (const auto& [id, label] : labels) {
    if (!found.contains(id)) {
      return absl::InvalidArgumentError(
          absl::StrCat("annotated video '", id, "' is missing from the dataset"));
    }
  }
  return out;
}

absl::StatusOr<EmbeddingSet> TrainEmbeddings(
    const RunConfig& config, const std::vector<std::pair<const VideoRecord*, bool>>& videos,
    ordered_json* report) {
  std::unordered_map<std::string, std::vector<float>> pretrained;
  if (!config.paths.pretrained.empty()) {
    PA_ASSIGN_OR_RETURN(pretrained, LoadPretrainedVectors(config.paths.pretrained));
  }
  EmbeddingSet models;
  ordered_json losses = ordered_json::object();
  for (size_t b = 0; b < kFeatureTypes.size(); ++b) {
    std::vector<LabeledText> examples;
    for (const auto& [video, pseudo] : videos) {
      examples.push_back({FeatureText(*video, kFeatureTypes[b]), pseudo});
    }
    PA_ASSIGN_OR_RETURN(
        EmbeddingTrainResult trained,
        TrainEmbeddingModel(examples, kFeatureTypes[b], config.embedding,
                            config.paths.pretrained.empty() ? nullptr : &pretrained));
    losses[std::string(FeatureTypeName(kFeatureTypes[b]))] = trained.epoch_losses;
    models[b] = std::move(trained.model);
  }
  (*report)["embedding_epoch_losses"] = std::move(losses);
  return models;
}

std::vector<LabeledSample> BuildSamples(
    const EmbeddingSet& models, const std::vector<std::pair<const VideoRecord*, bool>>& videos) {
  std::vector<LabeledSample> samples;
  samples.reserve(videos.size());
  for (const auto& [video, pseudo] : videos) {
    samples.push_back({video->id, ExtractFeatures(models, *video), pseudo});
  }
  return samples;
}

struct TrainedModels {
  EmbeddingSet embeddings;
  ClassifierModel classifier;
};

absl::StatusOr<TrainedModels> StageTrain(const RunConfig& config, const Corpus& corpus,
                                         OutputDir& out_dir, std::ostream& out) {
  PA_ASSIGN_OR_RETURN(auto videos, LabeledVideos(corpus));
  ordered_json report;
  TrainedModels models;
  PA_ASSIGN_OR_RETURN(models.embeddings, TrainEmbeddings(config, videos, &report));
  const std::vector<LabeledSample> samples = BuildSamples(models.embeddings, videos);

  TrainConfig train = config.classifier;
  train.train_final_model = true;
  PA_ASSIGN_OR_RETURN(TrainCvResult cv, TrainCrossValidated(samples, train));
  PA_ASSIGN_OR_RETURN(double tuned, ThresholdMoving(cv.pooled, train.threshold_step));

  ordered_json folds = ordered_json::array();
  for (const FoldReport& f : cv.folds) {
    ordered_json fj;
    fj["test_size"] = f.test_indices.size();
    fj["train_size"] = f.train_indices.size();
    fj["synthetic"] = f.synthetic_count;
    fj["train_pseudoscience"] = f.train_pseudo_count;
    fj["train_other"] = f.train_other_count;
    fj["metrics_at_0.5"] = MetricsJson(f.metrics);
    folds.push_back(std::move(fj));
  }
  report["samples"] = samples.size();
  report["folds"] = std::move(folds);
  report["pooled_at_0.5"] = MetricsJson(MetricsAtThreshold(cv.pooled, 0.5));
  report["pooled_at_threshold"] = MetricsJson(MetricsAtThreshold(cv.pooled, train.threshold));
  report["threshold"] = train.threshold;
  report["tuned_threshold"] = tuned;
  report["pooled_at_tuned_threshold"] = MetricsJson(MetricsAtThreshold(cv.pooled, tuned));
  report["final_model_synthetic"] = cv.final_synthetic_count;

  models.classifier.network = *std::move(cv.final_model);
  RoundWeightsToFloat(&models.classifier.network);
  models.classifier.threshold = config.use_tuned_threshold ? tuned : train.threshold;
  report["model_threshold"] = models.classifier.threshold;
  for (size_t b = 0; b < kFeatureTypes.size(); ++b) {
    const EmbeddingModel& m = models.embeddings[b];
    models.classifier.embedding_ids[b] = m.Id();
    PA_RETURN_IF_ERROR(out_dir.Write(
        fs::path("models") / absl::StrCat(std::string(FeatureTypeName(m.feature_type())), ".embed"),
        m.Serialize()));
  }
  report["embedding_ids"] = models.classifier.embedding_ids;
  PA_RETURN_IF_ERROR(out_dir.Write(fs::path("models") / kClassifierFile,
                                   SerializeClassifier(models.classifier)));
  PA_RETURN_IF_ERROR(out_dir.Write("train_report.json", report.dump(2) + "\n"));

  std::string oof = "video_id,p_pseudo,truth\n";
  for (const ScoredSample& s : cv.pooled) {
    absl::StrAppend(&oof, absl::StrFormat("%s,%.6f,%s\n", samples[s.index].id, s.p_pseudo,
                                          s.truth ? "pseudoscience" : "other"));
  }
  PA_RETURN_IF_ERROR(out_dir.Write("oof_predictions.csv", oof));
  const Metrics pooled = MetricsAtThreshold(cv.pooled, train.threshold);
  out << absl::StrFormat(
      "pooled out-of-fold accuracy %.4f, weighted f1 %.4f at threshold %.2f; tuned threshold "
      "%.2f\n",
      pooled.accuracy, pooled.f1, train.threshold, tuned);
  return models;
}

absl::Status StageAblate(const RunConfig& config, const Corpus& corpus, OutputDir& out_dir,
                         std::ostream& out) {
  PA_ASSIGN_OR_RETURN(auto videos, LabeledVideos(corpus));
  ordered_json report;
  PA_ASSIGN_OR_RETURN(EmbeddingSet embeddings, TrainEmbeddings(config, videos, &report));
  const std::vector<LabeledSample> samples = BuildSamples(embeddings, videos);
  PA_ASSIGN_OR_RETURN(std::vector<AblationRow> rows, Ablation(samples, config.classifier));
  PA_RETURN_IF_ERROR(out_dir.Write("ablation.csv", AblationCsv(rows)));
  out << "wrote " << rows.size() << " ablation rows\n";
  return absl::OkStatus();
}

absl::StatusOr<TrainedModels> LoadModels(const RunConfig& config) {
  const fs::path dir = ModelsDir(config);
  TrainedModels models;
  PA_ASSIGN_OR_RETURN(models.classifier, LoadClassifier(dir / kClassifierFile));
  for (size_t b = 0; b < kFeatureTypes.size(); ++b) {
    PA_ASSIGN_OR_RETURN(
        models.embeddings[b],
        EmbeddingModel::Load(dir / absl::StrCat(std::string(FeatureTypeName(kFeatureTypes[b])),
                                                ".embed")));
    if (models.embeddings[b].feature_type() != kFeatureTypes[b]) {
      return absl::InvalidArgumentError("embedding model file holds the wrong feature type");
    }
    if (models.embeddings[b].Id() != models.classifier.embedding_ids[b]) {
      return absl::FailedPreconditionError(absl::StrCat(
          "classifier was trained with embedding ", models.classifier.embedding_ids[b],
          " but the models directory holds ", models.embeddings[b].Id()));
    }
  }
  return models;
}

absl::StatusOr<std::vector<Prediction>> ClassifyAll(const RunConfig& config,
                                                    const TrainedModels& models,
                                                    const std::vector<const VideoRecord*>& videos) {
  std::vector<Prediction> predictions;
  predictions.reserve(videos.size());
  for (const VideoRecord* v : videos) {
    predictions.push_back(ClassifyVideo(models.embeddings, models.classifier.network, *v,
                                        models.classifier.threshold));
  }
  if (!config.paths.overrides.empty()) {
    PA_ASSIGN_OR_RETURN(std::vector<ReviewOverride> overrides,
                        LoadReviewOverrides(config.paths.overrides));
    PA_ASSIGN_OR_RETURN(predictions, ApplyReviewOverrides(std::move(predictions), overrides));
  }
  return predictions;
}

absl::Status StageClassify(const RunConfig& config, OutputDir& out_dir, std::ostream& out,
                           std::ostream& err) {
  std::vector<std::string> warnings;
  PA_ASSIGN_OR_RETURN(std::vector<VideoRecord> videos, LoadDataset(config.paths.dataset, &warnings));
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  PA_ASSIGN_OR_RETURN(TrainedModels models, LoadModels(config));
  std::vector<const VideoRecord*> ptrs;
  for (const VideoRecord& v : videos) ptrs.push_back(&v);
  PA_ASSIGN_OR_RETURN(std::vector<Prediction> predictions, ClassifyAll(config, models, ptrs));
  std::string csv = "video_id,p_pseudo,label\n";
  size_t positives = 0;
  for (const Prediction& p : predictions) {
    positives += p.pseudoscience;
    absl::StrAppend(&csv, absl::StrFormat("%s,%.6f,%s\n", p.video_id, p.p_pseudo,
                                          p.pseudoscience ? "pseudoscience" : "other"));
  }
  PA_RETURN_IF_ERROR(out_dir.Write("predictions.csv", csv));
  out << "classified " << predictions.size() << " videos, " << positives << " pseudoscience\n";
  return absl::OkStatus();
}

// The universe, plus the annotated dataset videos when configured.
absl::StatusOr<SimConfig> StageSimGenerate(const RunConfig& config, const Corpus* corpus,
                                           OutputDir& out_dir, std::ostream& out) {
  std::vector<LabeledVideo> extra;
  if (corpus != nullptr && config.universe_includes_dataset) {
    std::map<std::string, BinaryLabel> labels;
    for (const GroundTruthEntry& e : corpus->aggregation.entries) labels[e.video_id] = e.label;
    for (const VideoRecord& v : corpus->videos) {
      auto it = labels.find(v.id);
      if (it == labels.end()) continue;
      extra.push_back({v, it->second == BinaryLabel::kPseudoscience ? VideoClass::kPseudo
                                                                     : VideoClass::kOther});
    }
  }
  PA_ASSIGN_OR_RETURN(SimConfig sim, GenerateUniverse(config.simulator, extra));
  PA_RETURN_IF_ERROR(out_dir.Write("sim.json", SimConfigToJson(sim).dump(1) + "\n"));
  out << "generated a universe of " << sim.videos.size() << " videos\n";
  return sim;
}

struct AuditInputs {
  SimConfig sim;
  VideoLabels labels;                          // what the audit counts as pseudoscience
  std::vector<GroundTruthEntry> ground_truth;  // what profiles are built from
};

absl::StatusOr<VideoLabels> AuditLabels(const RunConfig& config, const SimConfig& sim,
                                        const TrainedModels* models) {
  if (config.labels == LabelSource::kSimulator) return SimulatorLabels(sim);
  if (models == nullptr) return absl::FailedPreconditionError("model labels need trained models");
  std::vector<const VideoRecord*> videos;
  for (const SimVideo& v : sim.videos) videos.push_back(&v.record);
  PA_ASSIGN_OR_RETURN(std::vector<Prediction> predictions, ClassifyAll(config, *models, videos));
  VideoLabels labels;
  for (const Prediction& p : predictions) {
    labels[p.video_id] = p.pseudoscience ? BinaryLabel::kPseudoscience : BinaryLabel::kOther;
  }
  return labels;
}

absl::StatusOr<AuditInputs> PrepareAudit(const RunConfig& config, std::optional<SimConfig> sim,
                                         const Corpus* corpus, const TrainedModels* models) {
  AuditInputs in;
  if (sim.has_value()) {
    in.sim = *std::move(sim);
  } else {
    PA_ASSIGN_OR_RETURN(in.sim, LoadSimConfig(SimConfigPath(config)));
  }
  std::optional<TrainedModels> loaded;
  if (config.labels == LabelSource::kModel && models == nullptr) {
    PA_ASSIGN_OR_RETURN(loaded, LoadModels(config));
    models = &*loaded;
  }
  PA_ASSIGN_OR_RETURN(in.labels, AuditLabels(config, in.sim, models));
  if (corpus != nullptr) {
    in.ground_truth = corpus->aggregation.entries;
  } else if (!config.paths.annotations.empty()) {
    PA_ASSIGN_OR_RETURN(std::vector<AnnotationRecord> annotations,
                        LoadAnnotations(config.paths.annotations));
    PA_ASSIGN_OR_RETURN(AggregationResult aggregation, AggregateLabels(annotations));
    in.ground_truth = std::move(aggregation.entries);
  } else {
    in.ground_truth = SimulatorGroundTruth(in.sim);
  }
  return in;
}

absl::StatusOr<WarmupResult> StageWarmup(const RunConfig& config, const AuditInputs& in,
                                         OutputDir& out_dir, std::ostream& out) {
  PA_ASSIGN_OR_RETURN(std::unique_ptr<SimPlatform> platform, SimPlatform::Create(in.sim));
  std::map<std::string, BinaryLabel> truth;
  for (const GroundTruthEntry& e : in.ground_truth) truth[e.video_id] = e.label;
  std::string reference = config.experiment.reference_video;
  if (reference.empty()) {
    PA_ASSIGN_OR_RETURN(reference, DefaultReferenceVideo(*platform, truth));
  }
  PA_ASSIGN_OR_RETURN(std::vector<std::string> pool,
                      WarmupPool(*platform, truth, reference, config.experiment.warmup_seed,
                                 config.experiment.warmup_pool));
  Profile profile;
  profile.id = "warmup";
  PA_ASSIGN_OR_RETURN(WarmupResult result,
                      WarmupLength(*platform, &profile, reference, pool,
                                   config.experiment.fraction));
  ordered_json j;
  j["reference_video"] = reference;
  j["pool_size"] = pool.size();
  j["converged"] = result.converged;
  j["watched"] = result.watched;
  j["initial_recommendations"] = result.initial_recommendations;
  ordered_json iterations = ordered_json::array();
  for (const WarmupIteration& it : result.iterations) {
    ordered_json ij;
    ij["watched"] = it.watched;
    ij["overlap"] = it.overlap;
    ij["recommendations"] = it.recommendations;
    iterations.push_back(std::move(ij));
  }
  j["iterations"] = std::move(iterations);
  PA_RETURN_IF_ERROR(out_dir.Write("warmup.json", j.dump(2) + "\n"));
  if (result.converged) {
    out << "W = " << result.watched << "\n";
  } else {
    out << "no convergence after " << result.watched << " videos\n";
  }
  return result;
}

struct Surfaces {
  bool home = false;
  bool search = false;
  bool walks = false;
};

absl::StatusOr<AuditResults> StageExperiments(const RunConfig& config, const AuditInputs& in,
                                              Surfaces surfaces) {
  const ExperimentConfig& e = config.experiment;
  AuditResults pooled;
  for (uint64_t seed : e.seeds) {
    const uint64_t run_seed = DeriveKey(in.sim.seed, "experiment", seed);
    std::map<PlatformKind, std::unique_ptr<SimPlatform>> platforms;
    for (const ProfileSpec& spec : config.profiles) {
      // A stateless sim config stays stateless for every profile.
      const PlatformKind kind =
          in.sim.kind == PlatformKind::kStateless ? PlatformKind::kStateless : spec.platform;
      if (!platforms.contains(kind)) {
        SimConfig copy = in.sim;
        copy.kind = kind;
        copy.seed = run_seed;
        PA_ASSIGN_OR_RETURN(platforms[kind], SimPlatform::Create(std::move(copy)));
      }
    }
    AuditResults run;
    for (const ProfileSpec& spec : config.profiles) {
      const PlatformKind kind =
          in.sim.kind == PlatformKind::kStateless ? PlatformKind::kStateless : spec.platform;
      SimPlatform& platform = *platforms[kind];
      Profile profile;
      profile.id = spec.name;
      profile.attributes = {{"age", "30"}, {"gender", "female"}};
      PA_STAGE(absl::StrCat("build profile ", spec.name),
               BuildProfile(platform, &profile, spec.persona, in.ground_truth,
                            spec.persona == Persona::kNone ? 0 : e.profile_size, e.fraction));
      ProfileResults result;
      result.profile = spec.name;
      if (surfaces.home) {
        PA_ASSIGN_OR_RETURN(result.home, HomepageExperiment(platform, &profile, in.labels,
                                                            e.home_n, e.home_reps));
      }
      for (const auto& [topic, queries] : config.queries) {
        if (surfaces.search) {
          for (const std::string& query : queries) {
            PA_ASSIGN_OR_RETURN(result.search[topic][query],
                                SearchExperiment(platform, &profile, topic, query, in.labels,
                                                 e.search_n, e.search_reps));
          }
        }
        if (surfaces.walks) {
          WalkOptions options;
          options.walks_per_query = e.walks_per_query;
          options.hops = e.hops;
          options.branch = e.branch;
          options.search_results = e.search_n;
          options.fraction = e.fraction;
          options.seed = run_seed;
          PA_ASSIGN_OR_RETURN(TopicWalks walks, RandomWalkExperiment(platform, &profile, topic,
                                                                     queries, in.labels, options));
          result.walks[topic] = std::move(walks.hop_tallies);
          result.walk_count += walks.walks.size();
          for (const WalkRecord& w : walks.walks) result.truncated_walks += w.truncated;
        }
      }
      run.profiles.push_back(std::move(result));
    }
    PA_RETURN_IF_ERROR(MergeResults(run, &pooled));
  }
  return pooled;
}

absl::Status WriteReport(const AuditResults& results, const fs::path& relative_dir,
                         OutputDir& out_dir) {
  PA_RETURN_IF_ERROR(out_dir.Write(relative_dir / "table.csv", TableCsv(results)));
  PA_RETURN_IF_ERROR(out_dir.Write(relative_dir / "hops.csv", HopsCsv(results)));
  PA_RETURN_IF_ERROR(
      out_dir.Write(relative_dir / "fisher.json", FisherJson(results).dump(2) + "\n"));
  PA_RETURN_IF_ERROR(out_dir.Write(relative_dir / "results.json",
                                   AuditResultsToJson(results).dump(1) + "\n"));
  return absl::OkStatus();
}

absl::Status WriteManifest(const LoadedConfig& loaded, std::string_view command,
                           OutputDir& out_dir) {
  const RunConfig& c = loaded.config;
  ordered_json m;
  m["manifest_version"] = 1;
  m["tool"] = "pseudoaudit";
  m["command"] = std::string(command);
  m["config_hash"] = Hex64(Fnv1a64(loaded.effective.dump()));
  m["seeds"] = {{"embedding", c.embedding.seed},
                {"classifier", c.classifier.seed},
                {"simulator", c.simulator.seed},
                {"experiment", c.experiment.seeds},
                {"warmup", c.experiment.warmup_seed}};
  ordered_json inputs = ordered_json::object();
  for (const fs::path& p : {c.paths.dataset, c.paths.annotations, c.paths.expert_labels,
                            c.paths.overrides, c.paths.pretrained, c.paths.sim_config}) {
    if (p.empty() || !fs::is_regular_file(p)) continue;
    absl::StatusOr<std::string> bytes = ReadFileBytes(p);
    if (bytes.ok()) inputs[p.string()] = Hex64(Fnv1a64(*bytes));
  }
  m["inputs"] = std::move(inputs);
  m["outputs"] = out_dir.written();
  m["config"] = loaded.effective;
  const std::string name =
      command == "run" ? "manifest.json" : absl::StrCat("manifest-", std::string(command), ".json");
  std::string text = m.dump(2) + "\n";
  return out_dir.Write(name, text);
}

// ---------------------------------------------------------------------------
// Command plumbing

struct ConfigOptions {
  std::string config;
  std::string manifest;
  std::vector<std::string> set;
  std::string out;
};

void AddConfigOptions(CLI::App* cmd, ConfigOptions* options) {
  cmd->add_option("-c,--config", options->config, "Run config (JSON)");
  cmd->add_option("--manifest", options->manifest, "Re-run from a manifest's config");
  cmd->add_option("--set", options->set, "Override a config key: section.key=value");
  cmd->add_option("--out", options->out, "Override paths.output_dir");
}

std::vector<Requirement> RequirementsFor(std::string_view command, const RunConfig& config) {
  std::vector<Requirement> r;
  const bool model_labels = config.labels == LabelSource::kModel;
  if (command == "aggregate") r = {Requirement::kAnnotations};
  if (command == "train" || command == "ablate" || command == "run") {
    r = {Requirement::kDataset, Requirement::kAnnotations};
  }
  if (command == "classify") r = {Requirement::kDataset, Requirement::kModels};
  if (command == "warmup" || command == "home" || command == "search" || command == "walks") {
    r = {Requirement::kSimConfig};
    if (model_labels) r.push_back(Requirement::kModels);
  }
  return r;
}

class Tool {
 public:
  Tool(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int Run(int argc, const char* const* argv);

 private:
  // Loads and validates the config for `command`; prints diagnostics.
  std::optional<LoadedConfig> Load(const ConfigOptions& options, std::string_view command);
  int Finish(const absl::Status& status);

  int Validate(const ConfigOptions& options, const std::string& target);
  int Command(const ConfigOptions& options, const std::string& command);
  int Report(const ConfigOptions& options, const std::vector<std::string>& results);
  int SynthCorpus(const SyntheticCorpusOptions& options, const std::string& out_dir,
                  double expert_noise);

  absl::Status Dispatch(const LoadedConfig& loaded, const std::string& command, OutputDir& dir);

  std::ostream& out_;
  std::ostream& err_;
};

std::optional<LoadedConfig> Tool::Load(const ConfigOptions& options, std::string_view command) {
  if (options.config.empty() == options.manifest.empty()) {
    err_ << "error: pass exactly one of --config or --manifest\n";
    return std::nullopt;
  }
  std::optional<fs::path> out;
  if (!options.out.empty()) out = fs::path(options.out);
  absl::StatusOr<LoadedConfig> loaded = LoadRunConfig(
      options.config.empty() ? options.manifest : options.config, options.set, out);
  if (!loaded.ok()) {
    err_ << "error: " << loaded.status().message() << "\n";
    return std::nullopt;
  }
  std::vector<std::string> diags = loaded->diagnostics;
  if (diags.empty()) {
    for (std::string& d : CheckPaths(loaded->config, RequirementsFor(command, loaded->config))) {
      diags.push_back(std::move(d));
    }
  }
  if (!diags.empty()) {
    for (const std::string& d : diags) err_ << "invalid config: " << d << "\n";
    return std::nullopt;
  }
  return *std::move(loaded);
}

int Tool::Finish(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  err_ << "error: " << status.message() << "\n";
  return kExitRuntime;
}

int Tool::Validate(const ConfigOptions& options, const std::string& target) {
  std::optional<LoadedConfig> loaded = Load(options, target);
  if (!loaded.has_value()) return kExitValidation;
  out_ << "config is valid for " << target << "\n";
  return kExitOk;
}

absl::Status Tool::Dispatch(const LoadedConfig& loaded, const std::string& command,
                            OutputDir& dir) {
  const RunConfig& config = loaded.config;
  if (command == "aggregate") {
    AggregationResult result;
    return InStage("aggregate", StageAggregate(config, dir, out_, &result));
  }
  if (command == "train") {
    PA_ASSIGN_OR_RETURN(Corpus corpus, InStage("load", LoadCorpus(config, err_)));
    return InStage("train", StageTrain(config, corpus, dir, out_).status());
  }
  if (command == "ablate") {
    PA_ASSIGN_OR_RETURN(Corpus corpus, InStage("load", LoadCorpus(config, err_)));
    return InStage("ablate", StageAblate(config, corpus, dir, out_));
  }
  if (command == "classify") return InStage("classify", StageClassify(config, dir, out_, err_));
  if (command == "sim-generate") {
    std::optional<Corpus> corpus;
    if (!config.paths.dataset.empty() && !config.paths.annotations.empty() &&
        config.universe_includes_dataset) {
      PA_ASSIGN_OR_RETURN(corpus, InStage("load", LoadCorpus(config, err_)));
    }
    return InStage("sim-generate",
                   StageSimGenerate(config, corpus ? &*corpus : nullptr, dir, out_).status());
  }
  if (command == "warmup" || command == "home" || command == "search" || command == "walks") {
    PA_ASSIGN_OR_RETURN(AuditInputs in,
                        InStage("prepare audit", PrepareAudit(config, std::nullopt, nullptr, nullptr)));
    if (command == "warmup") return InStage("warmup", StageWarmup(config, in, dir, out_).status());
    Surfaces s;
    s.home = command == "home";
    s.search = command == "search";
    s.walks = command == "walks";
    PA_ASSIGN_OR_RETURN(AuditResults results, InStage(command, StageExperiments(config, in, s)));
    PA_STAGE("report", WriteReport(results, absl::StrCat("audit-", command), dir));
    out_ << TableCsv(results);
    return absl::OkStatus();
  }
  if (command == "run") {
    PA_ASSIGN_OR_RETURN(Corpus corpus, InStage("load", LoadCorpus(config, err_)));
    AggregationResult aggregation;
    PA_STAGE("aggregate", StageAggregate(config, dir, out_, &aggregation));
    PA_ASSIGN_OR_RETURN(TrainedModels models, InStage("train", StageTrain(config, corpus, dir, out_)));
    PA_ASSIGN_OR_RETURN(SimConfig sim,
                        InStage("sim-generate", StageSimGenerate(config, &corpus, dir, out_)));
    PA_ASSIGN_OR_RETURN(AuditInputs in,
                        InStage("prepare audit", PrepareAudit(config, std::move(sim), &corpus,
                                                              &models)));
    PA_STAGE("warmup", StageWarmup(config, in, dir, out_).status());
    PA_ASSIGN_OR_RETURN(AuditResults results,
                        InStage("experiments", StageExperiments(config, in, {true, true, true})));
    PA_STAGE("report", WriteReport(results, "", dir));
    out_ << TableCsv(results);
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown command '", command, "'"));
}

int Tool::Command(const ConfigOptions& options, const std::string& command) {
  std::optional<LoadedConfig> loaded = Load(options, command);
  if (!loaded.has_value()) return kExitValidation;
  OutputDir dir(loaded->config.paths.output_dir);
  absl::Status status = Dispatch(*loaded, command, dir);
  if (status.ok()) status = WriteManifest(*loaded, command, dir);
  return Finish(status);
}

int Tool::Report(const ConfigOptions& options, const std::vector<std::string>& results_files) {
  std::optional<LoadedConfig> loaded = Load(options, "report");
  if (!loaded.has_value()) return kExitValidation;
  OutputDir dir(loaded->config.paths.output_dir);
  std::vector<fs::path> files(results_files.begin(), results_files.end());
  if (files.empty()) files.push_back(dir.root() / "results.json");
  AuditResults merged;
  absl::Status status;
  for (const fs::path& f : files) {
    absl::StatusOr<std::string> text = ReadFileBytes(f);
    if (!text.ok()) return Finish(InStage("report", text.status()));
    json j = json::parse(*text, nullptr, false);
    if (j.is_discarded()) {
      return Finish(absl::InvalidArgumentError(absl::StrCat("report: ", f.string(), ": malformed JSON")));
    }
    absl::StatusOr<AuditResults> results = AuditResultsFromJson(j);
    if (!results.ok()) return Finish(InStage(absl::StrCat("report: ", f.string()), results.status()));
    status = MergeResults(*results, &merged);
    if (!status.ok()) return Finish(InStage("report", status));
  }
  status = WriteReport(merged, "report", dir);
  if (status.ok()) status = WriteManifest(*loaded, "report", dir);
  if (status.ok()) out_ << TableCsv(merged);
  return Finish(status);
}

int Tool::SynthCorpus(const SyntheticCorpusOptions& options, const std::string& out_dir,
                      double expert_noise) {
  const SyntheticCorpus corpus = GenerateSyntheticCorpus(options);
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return Finish(absl::InternalError(absl::StrCat("cannot create ", out_dir)));
  absl::Status status = SaveDataset(dir / "dataset.jsonl", corpus.videos);
  if (status.ok()) status = SaveAnnotations(dir / "annotations.jsonl", corpus.annotations);
  if (status.ok()) {
    // Expert labels follow the latent label, flipped with probability
    // `expert_noise`.
    Rng rng(DeriveKey(options.seed, "expert-labels"));
    std::string text;
    for (const auto& [id, latent] : corpus.latent) {
      bool pseudo = latent == RawLabel::kPseudoscience;
      if (rng.Uniform01() < expert_noise) pseudo = !pseudo;
      ordered_json j;
      j["video_id"] = id;
      j["label"] = pseudo ? "pseudoscience" : "other";
      absl::StrAppend(&text, j.dump(), "\n");
    }
    status = WriteFileBytes(dir / "expert_labels.jsonl", text);
  }
  if (status.ok()) out_ << "wrote " << corpus.videos.size() << " videos to " << out_dir << "\n";
  return Finish(status);
}

int Tool::Run(int argc, const char* const* argv) {
  CLI::App app{"Pseudoscience classification and recommendation audit toolkit", "pseudoaudit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ConfigOptions options;
  std::string action;

  CLI::App* validate = app.add_subcommand("validate", "Check a run config");
  AddConfigOptions(validate, &options);
  std::string validate_for = "run";
  validate->add_option("--for", validate_for, "Command the config must be runnable for")
      ->check(CLI::IsMember({"aggregate", "train", "ablate", "classify", "sim-generate",
                             "warmup", "home", "search", "walks", "report", "run"}));

  struct Simple {
    const char* name;
    const char* help;
  };
  const std::vector<Simple> simple = {
      {"aggregate", "Aggregate crowd annotations into ground truth"},
      {"train", "Train embeddings and the fusing network with cross-validation"},
      {"ablate", "Cross-validate every subset of the four input branches"},
      {"classify", "Classify the dataset with trained models"},
      {"sim-generate", "Generate a simulator universe"},
      {"run", "Aggregate, train, generate, audit and report in one go"}};
  std::map<std::string, CLI::App*> commands;
  for (const Simple& s : simple) {
    commands[s.name] = app.add_subcommand(s.name, s.help);
    AddConfigOptions(commands[s.name], &options);
  }

  CLI::App* audit = app.add_subcommand("audit", "Run one audit experiment");
  audit->require_subcommand(1);
  for (const char* name : {"warmup", "home", "search", "walks"}) {
    commands[name] = audit->add_subcommand(name, absl::StrCat("Audit: ", name));
    AddConfigOptions(commands[name], &options);
  }

  CLI::App* report = app.add_subcommand("report", "Re-emit report files from results.json");
  AddConfigOptions(report, &options);
  std::vector<std::string> results_files;
  report->add_option("--results", results_files, "results.json files to merge");

  CLI::App* synth = app.add_subcommand("synth-corpus", "Write a synthetic annotated dataset");
  SyntheticCorpusOptions synth_options;
  std::string synth_out;
  double expert_noise = 0.0;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--science", synth_options.science);
  synth->add_option("--pseudoscience", synth_options.pseudoscience);
  synth->add_option("--irrelevant", synth_options.irrelevant);
  synth->add_option("--annotator-accuracy", synth_options.annotator_accuracy)
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--shared-rate", synth_options.style.shared_rate)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--cross-rate", synth_options.style.cross_rate)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--transcript-missing-rate", synth_options.style.transcript_missing_rate)
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--expert-noise", expert_noise)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--id-prefix", synth_options.id_prefix);
  synth->add_option("--seed", synth_options.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (validate->parsed()) return Validate(options, validate_for);
  if (report->parsed()) return Report(options, results_files);
  if (synth->parsed()) return SynthCorpus(synth_options, synth_out, expert_noise);
  for (const auto& [name, cmd] : commands) {
    if (cmd->parsed()) return Command(options, name);
  }
  err_ << "error: no command given\n";
  return kExitValidation;
}

}  // namespace

int RunTool(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return Tool(out, err).Run(argc, argv);
}

}  // namespace pseudoaudit
