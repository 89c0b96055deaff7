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

#include "pseudoaudit/textfeat/embedding_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/random.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

constexpr char kMagic[] = "PAEMBED";
constexpr uint32_t kFormatVersion = 1;
constexpr double kInitRange = 1.0 / kEmbeddingDim;

std::array<double, 2> Softmax2(double a, double b) {
  const double m = std::max(a, b);
  const double ea = std::exp(a - m);
  const double eb = std::exp(b - m);
  return {ea / (ea + eb), eb / (ea + eb)};
}

// Uniform in [-1/300, 1/300], a pure function of (seed, bucket).
void InitialRow(uint64_t seed, uint32_t bucket, float* out) {
  const uint64_t key = DeriveKey(seed, "row", bucket);
  for (int d = 0; d < kEmbeddingDim; ++d) {
    const double u = static_cast<double>(Mix64(key + d) >> 11) * 0x1.0p-53;
    out[d] = static_cast<float>(-kInitRange + 2.0 * kInitRange * u);
  }
}

}  // namespace

std::string_view FeatureTypeName(FeatureType type) {
  switch (type) {
    case FeatureType::kSnippet: return "snippet";
    case FeatureType::kTags: return "tags";
    case FeatureType::kTranscript: return "transcript";
    case FeatureType::kComments: return "comments";
  }
  return "snippet";
}

absl::StatusOr<FeatureType> ParseFeatureType(std::string_view name) {
  for (FeatureType t : kFeatureTypes) {
    if (FeatureTypeName(t) == name) return t;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown feature type '", std::string(name), "'"));
}

EmbeddingModel::EmbeddingModel(FeatureType feature_type, TokenizerConfig tokenizer,
                               uint32_t bucket_count, uint64_t init_seed)
    : feature_type_(feature_type),
      tokenizer_(tokenizer),
      bucket_count_(bucket_count),
      init_seed_(init_seed) {}

void EmbeddingModel::CopyRow(uint32_t bucket, std::span<float> out) const {
  if (auto it = row_index_.find(bucket); it != row_index_.end()) {
    std::copy_n(rows_.begin() + static_cast<size_t>(it->second) * kEmbeddingDim,
                kEmbeddingDim, out.begin());
    return;
  }
  InitialRow(init_seed_, bucket, out.data());
}

std::span<float> EmbeddingModel::MutableRow(uint32_t bucket) {
  auto [it, inserted] = row_index_.try_emplace(bucket, static_cast<uint32_t>(row_buckets_.size()));
  if (inserted) {
    row_buckets_.push_back(bucket);
    rows_.resize(rows_.size() + kEmbeddingDim);
    InitialRow(init_seed_, bucket, rows_.data() + static_cast<size_t>(it->second) * kEmbeddingDim);
  }
  return std::span<float>(rows_.data() + static_cast<size_t>(it->second) * kEmbeddingDim,
                          kEmbeddingDim);
}

std::array<double, kEmbeddingDim> EmbeddingModel::Hidden(std::span<const uint32_t> ids) const {
  std::array<double, kEmbeddingDim> hidden{};
  if (ids.empty()) return hidden;
  std::array<float, kEmbeddingDim> row;
  for (uint32_t id : ids) {
    CopyRow(id, row);
    for (int d = 0; d < kEmbeddingDim; ++d) hidden[d] += row[d];
  }
  const double inv = 1.0 / static_cast<double>(ids.size());
  for (double& h : hidden) h *= inv;
  return hidden;
}

FeatureVector EmbeddingModel::Embed(std::string_view text) const {
  return Hidden(BucketIds(text, tokenizer_, bucket_count_));
}

std::array<double, 2> EmbeddingModel::PredictProbabilities(std::string_view text) const {
  const auto hidden = Embed(text);
  std::array<double, 2> logits{};
  for (int label = 0; label < 2; ++label) {
    const auto out = OutputRow(label);
    for (int d = 0; d < kEmbeddingDim; ++d) logits[label] += out[d] * hidden[d];
  }
  return Softmax2(logits[0], logits[1]);
}

std::string EmbeddingModel::Serialize() const {
  ByteWriter w;
  w.PutRaw(kMagic);
  w.PutU32(kFormatVersion);
  w.PutU8(static_cast<uint8_t>(feature_type_));
  w.PutU8(tokenizer_.lowercase ? 1 : 0);
  w.PutU32(static_cast<uint32_t>(tokenizer_.ngram_length));
  w.PutU32(bucket_count_);
  w.PutU32(kEmbeddingDim);
  w.PutU64(init_seed_);

  std::vector<uint32_t> buckets = row_buckets_;
  std::sort(buckets.begin(), buckets.end());
  w.PutU32(static_cast<uint32_t>(buckets.size()));
  for (uint32_t bucket : buckets) {
    w.PutU32(bucket);
    const size_t slot = row_index_.at(bucket);
    for (int d = 0; d < kEmbeddingDim; ++d) w.PutF32(rows_[slot * kEmbeddingDim + d]);
  }
  for (float v : output_) w.PutF32(v);
  return w.bytes();
}

absl::StatusOr<EmbeddingModel> EmbeddingModel::Deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  PA_RETURN_IF_ERROR(r.ExpectRaw(kMagic));
  PA_ASSIGN_OR_RETURN(uint32_t version, r.GetU32());
  if (version != kFormatVersion) {
    return absl::UnimplementedError(absl::StrCat("unsupported embedding format version ", version));
  }
  PA_ASSIGN_OR_RETURN(uint8_t type, r.GetU8());
  if (type > 3) return absl::DataLossError("bad feature type");
  PA_ASSIGN_OR_RETURN(uint8_t lowercase, r.GetU8());
  PA_ASSIGN_OR_RETURN(uint32_t ngram, r.GetU32());
  PA_ASSIGN_OR_RETURN(uint32_t bucket_count, r.GetU32());
  PA_ASSIGN_OR_RETURN(uint32_t dim, r.GetU32());
  if (dim != kEmbeddingDim) return absl::DataLossError(absl::StrCat("dimension ", dim, " != 300"));
  if (bucket_count == 0 || ngram == 0) return absl::DataLossError("bad tokenizer settings");
  PA_ASSIGN_OR_RETURN(uint64_t init_seed, r.GetU64());

  TokenizerConfig tokenizer{.lowercase = lowercase != 0, .ngram_length = static_cast<int>(ngram)};
  EmbeddingModel model(static_cast<FeatureType>(type), tokenizer, bucket_count, init_seed);
  PA_ASSIGN_OR_RETURN(uint32_t rows, r.GetU32());
  for (uint32_t i = 0; i < rows; ++i) {
    PA_ASSIGN_OR_RETURN(uint32_t bucket, r.GetU32());
    if (bucket >= bucket_count) return absl::DataLossError("row bucket out of range");
    auto row = model.MutableRow(bucket);
    for (int d = 0; d < kEmbeddingDim; ++d) {
      PA_ASSIGN_OR_RETURN(row[d], r.GetF32());
    }
  }
  for (float& v : model.output_) {
    PA_ASSIGN_OR_RETURN(v, r.GetF32());
  }
  if (!r.AtEnd()) return absl::DataLossError("trailing bytes after embedding model");
  return model;
}

absl::Status EmbeddingModel::Save(const std::filesystem::path& path) const {
  return WriteFileBytes(path, Serialize());
}

absl::StatusOr<EmbeddingModel> EmbeddingModel::Load(const std::filesystem::path& path) {
  PA_ASSIGN_OR_RETURN(std::string bytes, ReadFileBytes(path));
  auto model = Deserialize(bytes);
  if (!model.ok()) {
    return absl::Status(model.status().code(),
                        absl::StrCat(path.string(), ": ", model.status().message()));
  }
  return model;
}

std::string EmbeddingModel::Id() const {
  return absl::StrFormat("%s-%016x", std::string(FeatureTypeName(feature_type_)), Fnv1a64(Serialize()));
}

absl::StatusOr<std::unordered_map<std::string, std::vector<float>>> LoadPretrainedVectors(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::unordered_map<std::string, std::vector<float>> vectors;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
    if (fields.empty()) continue;
    if (line_number == 1 && fields.size() == 2) continue;  // "<count> <dim>" header
    if (fields.size() != kEmbeddingDim + 1) {
      return absl::InvalidArgumentError(absl::StrCat(path.string(), ":", line_number,
                                                     ": expected token and 300 values"));
    }
    std::vector<float> values(kEmbeddingDim);
    for (int d = 0; d < kEmbeddingDim; ++d) {
      if (!absl::SimpleAtof(fields[d + 1], &values[d])) {
        return absl::InvalidArgumentError(
            absl::StrCat(path.string(), ":", line_number, ": bad number"));
      }
    }
    vectors[std::string(fields[0])] = std::move(values);
  }
  return vectors;
}

absl::StatusOr<EmbeddingTrainResult> TrainEmbeddingModel(
    std::span<const LabeledText> examples, FeatureType feature_type,
    const EmbeddingHyperparams& params,
    const std::unordered_map<std::string, std::vector<float>>* pretrained) {
  if (examples.empty()) return absl::InvalidArgumentError("empty training corpus");
  const bool has_positive =
      std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.pseudoscience; });
  const bool has_negative =
      std::any_of(examples.begin(), examples.end(), [](const auto& e) { return !e.pseudoscience; });
  if (!has_positive || !has_negative) {
    return absl::InvalidArgumentError("training corpus needs examples of both labels");
  }
  if (params.epochs <= 0 || params.learning_rate <= 0.0 || params.bucket_count == 0 ||
      params.tokenizer.ngram_length < 1) {
    return absl::InvalidArgumentError("bad embedding hyperparameters");
  }

  EmbeddingTrainResult result;
  EmbeddingModel& model = result.model;
  model = EmbeddingModel(feature_type, params.tokenizer, params.bucket_count,
                         DeriveKey(params.seed, "embedding-init", FeatureTypeName(feature_type)));

  std::vector<std::vector<uint32_t>> doc_ids;
  doc_ids.reserve(examples.size());
  for (const auto& e : examples) {
    doc_ids.push_back(BucketIds(e.text, params.tokenizer, params.bucket_count));
  }

  if (pretrained != nullptr) {
    // Sorted so that colliding tokens resolve the same way on every run.
    std::vector<std::string> tokens;
    for (const auto& e : examples) {
      for (auto& t : Tokenize(e.text, params.tokenizer.lowercase)) tokens.push_back(std::move(t));
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (const auto& token : tokens) {
      auto it = pretrained->find(token);
      if (it == pretrained->end()) continue;
      auto row = model.MutableRow(TokenHash(token) % params.bucket_count);
      std::copy(it->second.begin(), it->second.end(), row.begin());
    }
  }

  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveKey(params.seed, "embedding-order", FeatureTypeName(feature_type)));
  const double total_steps = static_cast<double>(params.epochs) * examples.size();
  size_t step = 0;
  std::array<double, kEmbeddingDim> grad_hidden;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.Shuffle(std::span<size_t>(order));
    double loss_sum = 0.0;
    size_t loss_count = 0;
    for (size_t idx : order) {
      const double lr = params.learning_rate * (1.0 - static_cast<double>(step) / total_steps);
      ++step;
      const auto& ids = doc_ids[idx];
      if (ids.empty()) continue;

      std::array<double, kEmbeddingDim> hidden{};
      for (uint32_t id : ids) {
        const auto row = model.MutableRow(id);
        for (int d = 0; d < kEmbeddingDim; ++d) hidden[d] += row[d];
      }
      const double inv = 1.0 / static_cast<double>(ids.size());
      for (double& h : hidden) h *= inv;

      std::array<double, 2> logits{};
      for (int label = 0; label < 2; ++label) {
        const auto out = model.OutputRow(label);
        for (int d = 0; d < kEmbeddingDim; ++d) logits[label] += out[d] * hidden[d];
      }
      const auto probs = Softmax2(logits[0], logits[1]);
      const int target = examples[idx].pseudoscience ? 1 : 0;
      loss_sum += -std::log(std::max(probs[target], 1e-300));
      ++loss_count;

      grad_hidden.fill(0.0);
      for (int label = 0; label < 2; ++label) {
        const double alpha = lr * ((label == target ? 1.0 : 0.0) - probs[label]);
        auto out = model.MutableOutputRow(label);
        for (int d = 0; d < kEmbeddingDim; ++d) {
          grad_hidden[d] += alpha * out[d];
          out[d] += static_cast<float>(alpha * hidden[d]);
        }
      }
      for (uint32_t id : ids) {
        auto row = model.MutableRow(id);
        for (int d = 0; d < kEmbeddingDim; ++d) row[d] += static_cast<float>(grad_hidden[d] * inv);
      }
    }
    result.epoch_losses.push_back(loss_count > 0 ? loss_sum / loss_count : 0.0);
  }
  return result;
}

}  // namespace pseudoaudit
