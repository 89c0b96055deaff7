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

#include "pseudoaudit/cli/run_config.h"

#include <cmath>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads typed fields out of one JSON object, collecting every problem and
// remembering which keys were consumed.
class Section {
 public:
  Section(const json& doc, std::string prefix, std::vector<std::string>* diagnostics)
      : prefix_(std::move(prefix)), diagnostics_(diagnostics) {
    if (doc.is_null()) return;
    if (!doc.is_object()) {
      Report(prefix_.empty() ? "config" : prefix_.substr(0, prefix_.size() - 1),
             "must be an object");
      return;
    }
    doc_ = &doc;
  }

  // Unknown keys are reported when the section goes out of scope.
  ~Section() {
    if (doc_ == nullptr) return;
    for (const auto& [key, value] : doc_->items()) {
      if (!seen_.contains(key)) {
        diagnostics_->push_back(absl::StrCat("unknown key '", prefix_, key, "'"));
      }
    }
  }

  const json* Get(const std::string& key) {
    seen_.insert(key);
    if (doc_ == nullptr || !doc_->contains(key)) return nullptr;
    return &(*doc_)[key];
  }

  const json& Child(const std::string& key) {
    const json* j = Get(key);
    return j == nullptr ? kNull : *j;
  }

  void Bool(const std::string& key, bool* out) {
    const json* j = Get(key);
    if (j == nullptr) return;
    if (!j->is_boolean()) return Report(key, "must be true or false");
    *out = j->get<bool>();
  }

  void String(const std::string& key, std::string* out) {
    const json* j = Get(key);
    if (j == nullptr) return;
    if (!j->is_string()) return Report(key, "must be a string");
    *out = j->get<std::string>();
  }

  void Path(const std::string& key, const std::filesystem::path& base,
            std::filesystem::path* out) {
    const json* j = Get(key);
    if (j == nullptr || j->is_null()) return;
    if (!j->is_string()) return Report(key, "must be a path string");
    const std::string value = j->get<std::string>();
    if (value.empty()) return;
    std::filesystem::path p(value);
    *out = (p.is_absolute() ? p : base / p).lexically_normal();
  }

  template <typename Int>
  void Integer(const std::string& key, Int* out, int64_t min) {
    const json* j = Get(key);
    if (j == nullptr) return;
    if (!j->is_number_integer()) return Report(key, "must be an integer");
    if (j->is_number_unsigned()) {
      const uint64_t v = j->get<uint64_t>();
      if (v > static_cast<uint64_t>(std::numeric_limits<Int>::max())) {
        return Report(key, "is too large");
      }
      if (min > 0 && v < static_cast<uint64_t>(min)) {
        return Report(key, absl::StrCat("must be >= ", min));
      }
      *out = static_cast<Int>(v);
      return;
    }
    const int64_t v = j->get<int64_t>();
    if (v < min) return Report(key, absl::StrCat("must be >= ", min));
    *out = static_cast<Int>(v);
  }

  void Number(const std::string& key, double* out, double min, double max, bool open_min = false,
              bool open_max = false) {
    const json* j = Get(key);
    if (j == nullptr) return;
    if (!j->is_number()) return Report(key, "must be a number");
    const double v = j->get<double>();
    const bool low = open_min ? v <= min : v < min;
    const bool high = open_max ? v >= max : v > max;
    if (!std::isfinite(v) || low || high) {
      return Report(key, absl::StrCat("must be in ", open_min ? "(" : "[", min, ", ", max,
                                      open_max ? ")" : "]"));
    }
    *out = v;
  }

  void Report(const std::string& key, const std::string& message) {
    diagnostics_->push_back(absl::StrCat(prefix_, key, ": ", message));
  }

  const std::string& prefix() const { return prefix_; }

 private:
  static inline const json kNull = nullptr;

  const json* doc_ = nullptr;
  std::string prefix_;
  std::vector<std::string>* diagnostics_;
  std::set<std::string> seen_;
};

std::string PathString(const std::filesystem::path& p) { return p.string(); }

ordered_json ConfigToJson(const RunConfig& c) {
  ordered_json j;
  ordered_json paths;
  paths["dataset"] = PathString(c.paths.dataset);
  paths["annotations"] = PathString(c.paths.annotations);
  paths["expert_labels"] = PathString(c.paths.expert_labels);
  paths["overrides"] = PathString(c.paths.overrides);
  paths["pretrained"] = PathString(c.paths.pretrained);
  paths["models"] = PathString(c.paths.models);
  paths["sim_config"] = PathString(c.paths.sim_config);
  paths["output_dir"] = PathString(c.paths.output_dir);
  j["paths"] = paths;

  ordered_json emb;
  emb["epochs"] = c.embedding.epochs;
  emb["learning_rate"] = c.embedding.learning_rate;
  emb["seed"] = c.embedding.seed;
  emb["bucket_count"] = c.embedding.bucket_count;
  emb["ngram_length"] = c.embedding.tokenizer.ngram_length;
  emb["lowercase"] = c.embedding.tokenizer.lowercase;
  j["embedding"] = emb;

  ordered_json cls;
  cls["epochs"] = c.classifier.epochs;
  cls["batch_size"] = c.classifier.batch_size;
  cls["folds"] = c.classifier.folds;
  cls["seed"] = c.classifier.seed;
  cls["learning_rate"] = c.classifier.learning_rate;
  cls["adam_epsilon"] = c.classifier.adam_epsilon;
  cls["smote_k"] = c.classifier.smote_k;
  cls["use_smote"] = c.classifier.use_smote;
  cls["threshold_step"] = c.classifier.threshold_step;
  cls["threshold"] = c.classifier.threshold;
  cls["use_tuned_threshold"] = c.use_tuned_threshold;
  j["classifier"] = cls;

  ordered_json sim;
  sim["kind"] = std::string(PlatformKindName(c.simulator.kind));
  sim["lambda"] = c.simulator.lambda;
  sim["jitter"] = c.simulator.jitter;
  sim["seed"] = c.simulator.seed;
  sim["pseudo_per_topic"] = c.simulator.pseudo_per_topic;
  sim["other_per_topic"] = c.simulator.other_per_topic;
  sim["unrelated"] = c.simulator.unrelated;
  sim["out_degree"] = c.simulator.out_degree;
  sim["topic_homophily"] = c.simulator.topic_homophily;
  sim["score_range"] = c.simulator.score_range;
  sim["shared_rate"] = c.simulator.style.shared_rate;
  sim["cross_rate"] = c.simulator.style.cross_rate;
  sim["include_dataset"] = c.universe_includes_dataset;
  j["simulator"] = sim;

  const ExperimentConfig& e = c.experiment;
  ordered_json exp;
  exp["home_n"] = e.home_n;
  exp["home_reps"] = e.home_reps;
  exp["search_n"] = e.search_n;
  exp["search_reps"] = e.search_reps;
  exp["walks_per_query"] = e.walks_per_query;
  exp["hops"] = e.hops;
  exp["branch"] = e.branch;
  exp["fraction"] = e.fraction;
  exp["profile_size"] = e.profile_size;
  exp["seeds"] = e.seeds;
  exp["warmup_pool"] = e.warmup_pool;
  exp["warmup_seed"] = e.warmup_seed;
  exp["reference_video"] = e.reference_video;
  j["experiment"] = exp;

  ordered_json queries = ordered_json::object();
  for (Topic topic : kAuditedTopics) {
    auto it = c.queries.find(topic);
    if (it != c.queries.end()) queries[std::string(TopicName(topic))] = it->second;
  }
  j["queries"] = queries;

  ordered_json profiles = ordered_json::array();
  for (const ProfileSpec& p : c.profiles) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["persona"] = std::string(PersonaName(p.persona));
    pj["platform"] = std::string(PlatformKindName(p.platform));
    profiles.push_back(pj);
  }
  j["profiles"] = profiles;

  ordered_json audit;
  audit["labels"] = c.labels == LabelSource::kModel ? "model" : "simulator";
  j["audit"] = audit;
  return j;
}

void ParsePaths(Section& s, const std::filesystem::path& base, PathsConfig* p) {
  s.Path("dataset", base, &p->dataset);
  s.Path("annotations", base, &p->annotations);
  s.Path("expert_labels", base, &p->expert_labels);
  s.Path("overrides", base, &p->overrides);
  s.Path("pretrained", base, &p->pretrained);
  s.Path("models", base, &p->models);
  s.Path("sim_config", base, &p->sim_config);
  s.Path("output_dir", base, &p->output_dir);
}

void ParseEmbedding(Section& s, EmbeddingHyperparams* e) {
  s.Integer("epochs", &e->epochs, 1);
  s.Number("learning_rate", &e->learning_rate, 0.0, 10.0, /*open_min=*/true);
  s.Integer("seed", &e->seed, 0);
  s.Integer("bucket_count", &e->bucket_count, 1);
  s.Integer("ngram_length", &e->tokenizer.ngram_length, 1);
  s.Bool("lowercase", &e->tokenizer.lowercase);
}

void ParseClassifier(Section& s, TrainConfig* t, bool* use_tuned) {
  s.Integer("epochs", &t->epochs, 1);
  s.Integer("batch_size", &t->batch_size, 1);
  s.Integer("folds", &t->folds, 2);
  s.Integer("seed", &t->seed, 0);
  s.Number("learning_rate", &t->learning_rate, 0.0, 1.0, /*open_min=*/true);
  s.Number("adam_epsilon", &t->adam_epsilon, 0.0, 1.0, /*open_min=*/true);
  s.Integer("smote_k", &t->smote_k, 1);
  s.Bool("use_smote", &t->use_smote);
  s.Number("threshold_step", &t->threshold_step, 0.0, 1.0, true, true);
  s.Number("threshold", &t->threshold, 0.0, 1.0);
  s.Bool("use_tuned_threshold", use_tuned);
}

void ParseSimulator(Section& s, UniverseOptions* u, bool* include_dataset) {
  std::string kind(PlatformKindName(u->kind));
  s.String("kind", &kind);
  if (auto k = ParsePlatformKind(kind); k.ok()) {
    u->kind = *k;
  } else {
    s.Report("kind", "must be 'simulator' or 'stateless'");
  }
  s.Number("lambda", &u->lambda, 0.0, 1e6);
  s.Number("jitter", &u->jitter, 0.0, 1e6);
  s.Integer("seed", &u->seed, 0);
  s.Integer("pseudo_per_topic", &u->pseudo_per_topic, 0);
  s.Integer("other_per_topic", &u->other_per_topic, 0);
  s.Integer("unrelated", &u->unrelated, 0);
  s.Integer("out_degree", &u->out_degree, 10);
  s.Number("topic_homophily", &u->topic_homophily, 0.0, 1.0);
  s.Number("score_range", &u->score_range, 0.0, 1e6, /*open_min=*/true);
  s.Number("shared_rate", &u->style.shared_rate, 0.0, 1.0);
  s.Number("cross_rate", &u->style.cross_rate, 0.0, 1.0);
  if (u->style.shared_rate + u->style.cross_rate > 1.0) {
    s.Report("cross_rate", "shared_rate + cross_rate must be <= 1");
  }
  s.Bool("include_dataset", include_dataset);
}

void ParseExperiment(Section& s, ExperimentConfig* e) {
  s.Integer("home_n", &e->home_n, 1);
  s.Integer("home_reps", &e->home_reps, 1);
  s.Integer("search_n", &e->search_n, 1);
  s.Integer("search_reps", &e->search_reps, 1);
  s.Integer("walks_per_query", &e->walks_per_query, 1);
  s.Integer("hops", &e->hops, 1);
  s.Integer("branch", &e->branch, 1);
  s.Number("fraction", &e->fraction, 0.0, 1.0, /*open_min=*/true);
  s.Integer("profile_size", &e->profile_size, 0);
  if (const json* seeds = s.Get("seeds"); seeds != nullptr) {
    bool ok = seeds->is_array() && !seeds->empty();
    std::vector<uint64_t> values;
    if (ok) {
      for (const json& v : *seeds) {
        if (!v.is_number_unsigned()) {
          ok = false;
          break;
        }
        values.push_back(v.get<uint64_t>());
      }
    }
    if (ok) {
      e->seeds = std::move(values);
    } else {
      s.Report("seeds", "must be a non-empty array of non-negative integers");
    }
  }
  s.Integer("warmup_pool", &e->warmup_pool, 1);
  if (e->warmup_pool > 100) s.Report("warmup_pool", "must be <= 100");
  s.Integer("warmup_seed", &e->warmup_seed, 0);
  s.String("reference_video", &e->reference_video);
}

void ParseQueries(const json& doc, std::vector<std::string>* diagnostics, TopicQueries* out) {
  if (doc.is_null()) return;
  if (!doc.is_object()) {
    diagnostics->push_back("queries: must be an object of topic -> query list");
    return;
  }
  TopicQueries queries;
  for (const auto& [name, list] : doc.items()) {
    auto topic = ParseTopic(name);
    if (!topic.ok() || *topic == Topic::kNone) {
      diagnostics->push_back(absl::StrCat("unknown key 'queries.", name, "'"));
      continue;
    }
    bool ok = list.is_array() && !list.empty();
    std::vector<std::string> values;
    std::set<std::string> distinct;
    if (ok) {
      for (const json& q : list) {
        if (!q.is_string() || q.get<std::string>().empty() ||
            !distinct.insert(q.get<std::string>()).second) {
          ok = false;
          break;
        }
        values.push_back(q.get<std::string>());
      }
    }
    if (!ok) {
      diagnostics->push_back(
          absl::StrCat("queries.", name, ": must be a non-empty list of distinct query strings"));
      continue;
    }
    queries[*topic] = std::move(values);
  }
  *out = std::move(queries);
}

void ParseProfiles(const json& doc, std::vector<std::string>* diagnostics,
                   std::vector<ProfileSpec>* out) {
  if (doc.is_null()) return;
  if (!doc.is_array() || doc.empty()) {
    diagnostics->push_back("profiles: must be a non-empty array");
    return;
  }
  std::vector<ProfileSpec> profiles;
  std::set<std::string> names;
  for (size_t i = 0; i < doc.size(); ++i) {
    Section s(doc[i], absl::StrCat("profiles[", i, "]."), diagnostics);
    ProfileSpec p;
    s.String("name", &p.name);
    if (p.name.empty() || p.name.find_first_of(",\n\"") != std::string::npos) {
      s.Report("name", "must be a non-empty name without commas or quotes");
    } else if (!names.insert(p.name).second) {
      s.Report("name", absl::StrCat("duplicate profile name '", p.name, "'"));
    }
    std::string persona = "none";
    s.String("persona", &persona);
    if (auto v = ParsePersona(persona); v.ok()) {
      p.persona = *v;
    } else {
      s.Report("persona", "must be one of science, pseudoscience, mixed, none");
    }
    std::string platform = "simulator";
    s.String("platform", &platform);
    if (auto v = ParsePlatformKind(platform); v.ok()) {
      p.platform = *v;
    } else {
      s.Report("platform", "must be 'simulator' or 'stateless'");
    }
    profiles.push_back(std::move(p));
  }
  *out = std::move(profiles);
}

}  // namespace

std::vector<ProfileSpec> DefaultProfiles() {
  return {{"science", Persona::kScience, PlatformKind::kSimulator},
          {"pseudoscience", Persona::kPseudoscience, PlatformKind::kSimulator},
          {"mixed", Persona::kMixed, PlatformKind::kSimulator},
          {"no-profile", Persona::kNone, PlatformKind::kSimulator},
          {"api", Persona::kNone, PlatformKind::kStateless}};
}

absl::Status ApplySetOverride(std::string_view assignment, json* doc) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("--set expects key=value, got '", std::string(assignment), "'"));
  }
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = raw;
  json* node = doc;
  std::vector<std::string> parts = absl::StrSplit(key, '.');
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) return absl::InvalidArgumentError(absl::StrCat("bad key '", key, "'"));
    if (!node->is_object()) {
      if (!node->is_null()) {
        return absl::InvalidArgumentError(absl::StrCat("'", key, "' crosses a non-object value"));
      }
      *node = json::object();
    }
    node = &(*node)[parts[i]];
  }
  *node = std::move(value);
  return absl::OkStatus();
}

LoadedConfig ParseRunConfig(const json& doc, const std::filesystem::path& base_dir) {
  LoadedConfig out;
  RunConfig& c = out.config;
  c.profiles = DefaultProfiles();
  std::vector<std::string>& diags = out.diagnostics;
  {
    Section root(doc, "", &diags);
    {
      Section s(root.Child("paths"), "paths.", &diags);
      ParsePaths(s, base_dir, &c.paths);
    }
    {
      Section s(root.Child("embedding"), "embedding.", &diags);
      ParseEmbedding(s, &c.embedding);
    }
    {
      Section s(root.Child("classifier"), "classifier.", &diags);
      ParseClassifier(s, &c.classifier, &c.use_tuned_threshold);
    }
    {
      Section s(root.Child("simulator"), "simulator.", &diags);
      ParseSimulator(s, &c.simulator, &c.universe_includes_dataset);
    }
    {
      Section s(root.Child("experiment"), "experiment.", &diags);
      ParseExperiment(s, &c.experiment);
    }
    ParseQueries(root.Child("queries"), &diags, &c.queries);
    ParseProfiles(root.Child("profiles"), &diags, &c.profiles);
    {
      Section s(root.Child("audit"), "audit.", &diags);
      std::string labels = "model";
      s.String("labels", &labels);
      if (labels == "model") {
        c.labels = LabelSource::kModel;
      } else if (labels == "simulator") {
        c.labels = LabelSource::kSimulator;
      } else {
        s.Report("labels", "must be 'model' or 'simulator'");
      }
    }
  }
  if (c.paths.output_dir.empty()) diags.push_back("paths.output_dir: required");
  out.effective = ConfigToJson(c);
  return out;
}

absl::StatusOr<LoadedConfig> LoadRunConfig(const std::filesystem::path& path,
                                           const std::vector<std::string>& set_overrides,
                                           const std::optional<std::filesystem::path>& output_dir) {
  PA_ASSIGN_OR_RETURN(std::string text, ReadFileBytes(path));
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), ": malformed JSON"));
  }
  // A manifest carries the effective config of the run it describes.
  if (doc.is_object() && doc.contains("manifest_version") && doc.contains("config")) {
    json config = doc["config"];
    doc = std::move(config);
  }
  for (const std::string& assignment : set_overrides) {
    PA_RETURN_IF_ERROR(ApplySetOverride(assignment, &doc));
  }
  const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
  if (output_dir.has_value()) {
    if (!doc.is_object()) doc = json::object();
    doc["paths"]["output_dir"] = std::filesystem::absolute(*output_dir).lexically_normal().string();
  }
  return ParseRunConfig(doc, base);
}

std::vector<std::string> CheckPaths(const RunConfig& config,
                                    const std::vector<Requirement>& required) {
  std::vector<std::string> diags;
  auto check = [&](const char* key, const std::filesystem::path& p) {
    if (!p.empty() && !std::filesystem::exists(p)) {
      diags.push_back(absl::StrCat("paths.", key, ": '", p.string(), "' does not exist"));
    }
  };
  check("dataset", config.paths.dataset);
  check("annotations", config.paths.annotations);
  check("expert_labels", config.paths.expert_labels);
  check("overrides", config.paths.overrides);
  check("pretrained", config.paths.pretrained);
  check("models", config.paths.models);
  check("sim_config", config.paths.sim_config);
  for (Requirement r : required) {
    switch (r) {
      case Requirement::kDataset:
        if (config.paths.dataset.empty()) diags.push_back("paths.dataset: required");
        break;
      case Requirement::kAnnotations:
        if (config.paths.annotations.empty()) diags.push_back("paths.annotations: required");
        break;
      case Requirement::kModels:
        if (!std::filesystem::exists(ModelsDir(config))) {
          diags.push_back(absl::StrCat("paths.models: '", ModelsDir(config).string(),
                                       "' does not exist; run train first"));
        }
        break;
      case Requirement::kSimConfig:
        if (!std::filesystem::exists(SimConfigPath(config))) {
          diags.push_back(absl::StrCat("paths.sim_config: '", SimConfigPath(config).string(),
                                       "' does not exist; run sim-generate first"));
        }
        break;
    }
  }
  return diags;
}

std::filesystem::path ModelsDir(const RunConfig& config) {
  return config.paths.models.empty() ? config.paths.output_dir / "models" : config.paths.models;
}

std::filesystem::path SimConfigPath(const RunConfig& config) {
  return config.paths.sim_config.empty() ? config.paths.output_dir / "sim.json"
                                         : config.paths.sim_config;
}

}  // namespace pseudoaudit
