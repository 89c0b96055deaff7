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

#ifndef PSEUDOAUDIT_TEXTFEAT_EMBEDDING_MODEL_H_
#define PSEUDOAUDIT_TEXTFEAT_EMBEDDING_MODEL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pseudoaudit/textfeat/tokenizer.h"

namespace pseudoaudit {

inline constexpr int kEmbeddingDim = 300;
inline constexpr uint32_t kDefaultBucketCount = 1u << 20;

using FeatureVector = std::array<double, kEmbeddingDim>;

enum class FeatureType { kSnippet = 0, kTags = 1, kTranscript = 2, kComments = 3 };

// Fixed branch order of the fusing network input.
inline constexpr std::array<FeatureType, 4> kFeatureTypes = {
    FeatureType::kSnippet, FeatureType::kTags, FeatureType::kTranscript,
    FeatureType::kComments};

std::string_view FeatureTypeName(FeatureType type);
absl::StatusOr<FeatureType> ParseFeatureType(std::string_view name);

// Supervised bag-of-ngrams model: a document vector is the mean of the
// input-matrix rows of its hashed unigrams and word n-grams, and a linear head
// maps it to two labels (0 = other, 1 = pseudoscience).
//
// The input matrix has `bucket_count` rows but only rows touched by training
// or pretrained initialization are stored. Every other row equals its random
// initial value, which is a pure function of (init_seed, bucket).
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(FeatureType feature_type, TokenizerConfig tokenizer, uint32_t bucket_count,
                 uint64_t init_seed);

  FeatureType feature_type() const { return feature_type_; }
  const TokenizerConfig& tokenizer() const { return tokenizer_; }
  uint32_t bucket_count() const { return bucket_count_; }
  uint64_t init_seed() const { return init_seed_; }
  size_t stored_rows() const { return row_index_.size(); }

  // Mean of the rows of every unigram and n-gram of `text`; the zero vector
  // when `text` has no tokens.
  FeatureVector Embed(std::string_view text) const;

  // Softmax of the label head over Embed(text). Entry 1 is pseudoscience.
  std::array<double, 2> PredictProbabilities(std::string_view text) const;

  void CopyRow(uint32_t bucket, std::span<float> out) const;
  std::span<float> MutableRow(uint32_t bucket);
  std::span<float> MutableOutputRow(int label) {
    return std::span<float>(output_).subspan(label * kEmbeddingDim, kEmbeddingDim);
  }
  std::span<const float> OutputRow(int label) const {
    return std::span<const float>(output_).subspan(label * kEmbeddingDim, kEmbeddingDim);
  }

  // Little-endian container; see the README for the layout.
  std::string Serialize() const;
  static absl::StatusOr<EmbeddingModel> Deserialize(std::string_view bytes);

  absl::Status Save(const std::filesystem::path& path) const;
  static absl::StatusOr<EmbeddingModel> Load(const std::filesystem::path& path);

  // "<feature>-<16 hex digits>", a content hash of Serialize().
  std::string Id() const;

 private:
  std::array<double, kEmbeddingDim> Hidden(std::span<const uint32_t> ids) const;

  FeatureType feature_type_ = FeatureType::kSnippet;
  TokenizerConfig tokenizer_;
  uint32_t bucket_count_ = kDefaultBucketCount;
  uint64_t init_seed_ = 0;
  std::unordered_map<uint32_t, uint32_t> row_index_;  // bucket -> slot in rows_
  std::vector<uint32_t> row_buckets_;                 // slot -> bucket
  std::vector<float> rows_;
  std::vector<float> output_ = std::vector<float>(2 * kEmbeddingDim, 0.0f);
};

struct EmbeddingHyperparams {
  int epochs = 10;
  double learning_rate = 0.1;  // decays linearly to 0 over training
  uint64_t seed = 1;
  uint32_t bucket_count = kDefaultBucketCount;
  TokenizerConfig tokenizer;
};

struct LabeledText {
  std::string text;
  bool pseudoscience = false;
};

struct EmbeddingTrainResult {
  EmbeddingModel model;
  // Mean training cross-entropy of each epoch, measured before each update.
  std::vector<double> epoch_losses;
};

// Plain-text vectors: one token followed by 300 reals per line. A leading
// "<count> <dim>" header line is skipped.
absl::StatusOr<std::unordered_map<std::string, std::vector<float>>> LoadPretrainedVectors(
    const std::filesystem::path& path);

// Stochastic gradient descent on softmax cross-entropy, one document at a
// time in a seeded per-epoch shuffle. Rows of corpus tokens found in
// `pretrained` start from those vectors.
absl::StatusOr<EmbeddingTrainResult> TrainEmbeddingModel(
    std::span<const LabeledText> examples, FeatureType feature_type,
    const EmbeddingHyperparams& params,
    const std::unordered_map<std::string, std::vector<float>>* pretrained = nullptr);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_TEXTFEAT_EMBEDDING_MODEL_H_
