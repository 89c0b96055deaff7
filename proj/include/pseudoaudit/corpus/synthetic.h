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

#ifndef PSEUDOAUDIT_CORPUS_SYNTHETIC_H_
#define PSEUDOAUDIT_CORPUS_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pseudoaudit/corpus/video_record.h"
#include "pseudoaudit/util/random.h"

namespace pseudoaudit {

// Shape of synthetic video text. Each latent label owns a private vocabulary;
// a token is drawn from the shared vocabulary with probability `shared_rate`
// and from another label's vocabulary with probability `cross_rate`.
struct TextStyle {
  int title_tokens = 6;
  int description_tokens = 20;
  int tag_count = 6;
  int transcript_tokens = 80;
  int comment_count = 12;
  int comment_tokens = 8;
  double transcript_missing_rate = 0.0;
  int vocab_size = 150;
  int shared_vocab_size = 300;
  double shared_rate = 0.0;
  double cross_rate = 0.0;
};

// Deterministic pseudo-word for a vocabulary. Distinct (prefix, index) pairs
// give distinct alphabetic tokens.
std::string SyntheticWord(char prefix, int index);

// Fills every text field, popularity counters and duration of a video whose
// latent label is `latent`.
VideoRecord SynthesizeVideo(std::string id, RawLabel latent, Topic topic,
                            const TextStyle& style, Rng& rng);

struct SyntheticCorpusOptions {
  int science = 200;
  int pseudoscience = 400;
  int irrelevant = 200;
  TextStyle style;
  int annotator_pool = 20;
  // Probability that an annotator reports the latent label; otherwise one of
  // the two remaining labels is picked uniformly.
  double annotator_accuracy = 1.0;
  std::string id_prefix = "d";
  uint64_t seed = 7;
};

struct SyntheticCorpus {
  std::vector<VideoRecord> videos;
  std::vector<AnnotationRecord> annotations;
  std::map<std::string, RawLabel> latent;
};

// Videos cycle through the four audited topics. Three distinct annotators
// label every video.
SyntheticCorpus GenerateSyntheticCorpus(const SyntheticCorpusOptions& options);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CORPUS_SYNTHETIC_H_
