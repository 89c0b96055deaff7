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

#include "pseudoaudit/classifier/folds.h"

#include <algorithm>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pseudoaudit/util/random.h"

namespace pseudoaudit {

absl::StatusOr<std::vector<std::vector<size_t>>> StratifiedFolds(std::span<const int> labels,
                                                                 int folds, uint64_t seed) {
  if (folds < 2) return absl::InvalidArgumentError("need at least 2 folds");
  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& [label, members] : by_class) {
    if (members.size() < static_cast<size_t>(folds)) {
      return absl::InvalidArgumentError(absl::StrCat("class ", label, " has ", members.size(),
                                                     " members, fewer than ", folds, " folds"));
    }
  }
  std::vector<std::vector<size_t>> out(folds);
  size_t next = 0;
  for (auto& [label, members] : by_class) {
    Rng rng(DeriveKey(seed, "stratified-folds", static_cast<uint64_t>(label)));
    rng.Shuffle(std::span<size_t>(members));
    for (size_t idx : members) {
      out[next].push_back(idx);
      next = (next + 1) % folds;
    }
  }
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

}  // namespace pseudoaudit
