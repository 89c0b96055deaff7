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

#include "pseudoaudit/corpus/synthetic.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace pseudoaudit {
namespace {

char VocabPrefix(RawLabel label) {
  switch (label) {
    case RawLabel::kScience: return 's';
    case RawLabel::kPseudoscience: return 'p';
    case RawLabel::kIrrelevant: return 'i';
  }
  return 'i';
}

std::string DrawToken(RawLabel latent, const TextStyle& style, Rng& rng) {
  const double r = rng.Uniform01();
  if (r < style.shared_rate) {
    return SyntheticWord('c', static_cast<int>(rng.UniformIndex(style.shared_vocab_size)));
  }
  RawLabel source = latent;
  if (r < style.shared_rate + style.cross_rate) {
    // One of the two other labels.
    const int shift = 1 + static_cast<int>(rng.UniformIndex(2));
    source = static_cast<RawLabel>((static_cast<int>(latent) + shift) % 3);
  }
  return SyntheticWord(VocabPrefix(source),
                       static_cast<int>(rng.UniformIndex(style.vocab_size)));
}

std::string DrawText(int tokens, RawLabel latent, const TextStyle& style, Rng& rng) {
  std::vector<std::string> words;
  words.reserve(tokens);
  for (int i = 0; i < tokens; ++i) words.push_back(DrawToken(latent, style, rng));
  return absl::StrJoin(words, " ");
}

}  // namespace

std::string SyntheticWord(char prefix, int index) {
  std::string word(1, prefix);
  // Fixed-width base-26 so that the words of one vocabulary never collide.
  for (int i = 0; i < 4; ++i) {
    word.push_back(static_cast<char>('a' + index % 26));
    index /= 26;
  }
  return word;
}

VideoRecord SynthesizeVideo(std::string id, RawLabel latent, Topic topic,
                            const TextStyle& style, Rng& rng) {
  VideoRecord v;
  v.id = std::move(id);
  v.topic = topic;
  v.title = DrawText(style.title_tokens, latent, style, rng);
  v.description = DrawText(style.description_tokens, latent, style, rng);
  for (int i = 0; i < style.tag_count; ++i) v.tags.push_back(DrawToken(latent, style, rng));
  if (rng.Uniform01() >= style.transcript_missing_rate) {
    v.transcript = DrawText(style.transcript_tokens, latent, style, rng);
  }
  const int comments = std::min<int>(style.comment_count, kMaxComments);
  for (int i = 0; i < comments; ++i) {
    v.comments.push_back(DrawText(style.comment_tokens, latent, style, rng));
  }
  v.views = static_cast<uint64_t>(std::floor(std::exp(rng.Uniform(4.0, 14.0))));
  v.likes = static_cast<uint64_t>(std::floor(v.views * rng.Uniform(0.005, 0.05)));
  v.comment_count = static_cast<uint64_t>(std::floor(v.views * rng.Uniform(0.0005, 0.005)));
  v.duration_s = 30 + static_cast<uint32_t>(rng.UniformIndex(1171));
  return v;
}

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticCorpusOptions& options) {
  SyntheticCorpus corpus;
  std::vector<RawLabel> latent;
  latent.insert(latent.end(), options.science, RawLabel::kScience);
  latent.insert(latent.end(), options.pseudoscience, RawLabel::kPseudoscience);
  latent.insert(latent.end(), options.irrelevant, RawLabel::kIrrelevant);

  Rng order_rng(DeriveKey(options.seed, "order"));
  order_rng.Shuffle(std::span<RawLabel>(latent));

  Rng text_rng(DeriveKey(options.seed, "text"));
  Rng annotator_rng(DeriveKey(options.seed, "annotators"));
  for (size_t i = 0; i < latent.size(); ++i) {
    std::string id = absl::StrFormat("%s%05d", options.id_prefix, i);
    const Topic topic = kAuditedTopics[i % kAuditedTopics.size()];
    corpus.videos.push_back(SynthesizeVideo(id, latent[i], topic, options.style, text_rng));
    corpus.latent[id] = latent[i];

    std::vector<int> pool(options.annotator_pool);
    for (int a = 0; a < options.annotator_pool; ++a) pool[a] = a;
    for (int k = 0; k < 3; ++k) {
      const size_t pick = k + annotator_rng.UniformIndex(pool.size() - k);
      std::swap(pool[k], pool[pick]);
      AnnotationRecord record;
      record.video_id = id;
      record.annotator_id = absl::StrFormat("ann%02d", pool[k]);
      record.label = latent[i];
      if (annotator_rng.Uniform01() >= options.annotator_accuracy) {
        const int shift = 1 + static_cast<int>(annotator_rng.UniformIndex(2));
        record.label = static_cast<RawLabel>((static_cast<int>(latent[i]) + shift) % 3);
      }
      corpus.annotations.push_back(std::move(record));
    }
  }
  return corpus;
}

}  // namespace pseudoaudit
