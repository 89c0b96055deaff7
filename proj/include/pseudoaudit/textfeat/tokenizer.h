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

#ifndef PSEUDOAUDIT_TEXTFEAT_TOKENIZER_H_
#define PSEUDOAUDIT_TEXTFEAT_TOKENIZER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pseudoaudit {

struct TokenizerConfig {
  bool lowercase = true;
  // Word n-grams of length 2..ngram_length are emitted next to unigrams.
  int ngram_length = 2;

  bool operator==(const TokenizerConfig&) const = default;
};

// Maximal runs of ASCII letters/digits. Bytes >= 0x80 count as letters so
// that UTF-8 words stay whole. ASCII letters are folded when `lowercase`.
std::vector<std::string> Tokenize(std::string_view text, bool lowercase);

// 32-bit FNV-1a, the token hash of the bag-of-ngrams model family.
uint32_t TokenHash(std::string_view token);

// Bucket ids of every unigram and word n-gram in `text`, in text order.
std::vector<uint32_t> BucketIds(std::string_view text, const TokenizerConfig& config,
                                uint32_t bucket_count);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_TEXTFEAT_TOKENIZER_H_
