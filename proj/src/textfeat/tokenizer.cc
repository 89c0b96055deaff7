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

#include "pseudoaudit/textfeat/tokenizer.h"

#include <algorithm>

namespace pseudoaudit {
namespace {

bool IsTokenByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text, bool lowercase) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (IsTokenByte(c)) {
      if (lowercase && c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
      current.push_back(static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

uint32_t TokenHash(std::string_view token) {
  uint32_t h = 2166136261u;
  for (unsigned char c : token) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::vector<uint32_t> BucketIds(std::string_view text, const TokenizerConfig& config,
                                uint32_t bucket_count) {
  const std::vector<std::string> tokens = Tokenize(text, config.lowercase);
  std::vector<uint64_t> hashes;
  hashes.reserve(tokens.size());
  for (const auto& t : tokens) hashes.push_back(TokenHash(t));

  std::vector<uint32_t> ids;
  ids.reserve(tokens.size() * static_cast<size_t>(std::max(config.ngram_length, 1)));
  for (uint64_t h : hashes) ids.push_back(static_cast<uint32_t>(h % bucket_count));
  for (size_t i = 0; i < hashes.size(); ++i) {
    uint64_t h = hashes[i];
    for (size_t j = i + 1; j < hashes.size() && j < i + config.ngram_length; ++j) {
      h = h * 116049371 + hashes[j];
      ids.push_back(static_cast<uint32_t>(h % bucket_count));
    }
  }
  return ids;
}

}  // namespace pseudoaudit
