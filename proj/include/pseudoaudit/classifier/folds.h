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

#ifndef PSEUDOAUDIT_CLASSIFIER_FOLDS_H_
#define PSEUDOAUDIT_CLASSIFIER_FOLDS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace pseudoaudit {

// Stratified k-fold split over binary labels. Each class is shuffled with
// `seed` and dealt round-robin across the folds, continuing from where the
// previous class stopped, so per-fold class counts differ from exact
// proportionality by at most one. Each returned fold is sorted.
absl::StatusOr<std::vector<std::vector<size_t>>> StratifiedFolds(std::span<const int> labels,
                                                                 int folds, uint64_t seed);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_FOLDS_H_
