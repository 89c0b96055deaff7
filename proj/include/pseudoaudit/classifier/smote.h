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

#ifndef PSEUDOAUDIT_CLASSIFIER_SMOTE_H_
#define PSEUDOAUDIT_CLASSIFIER_SMOTE_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"

namespace pseudoaudit {

// Synthetic minority oversampling. `minority` holds one point per column.
// Returns `target_count - minority.cols()` synthetic points, one per column;
// each is p + u * (q - p) for a uniformly drawn minority point p, one of its
// `k` nearest minority neighbours q (Euclidean, ties by index) and u uniform
// in [0, 1).
absl::StatusOr<Eigen::MatrixXd> Smote(const Eigen::MatrixXd& minority, int k,
                                      Eigen::Index target_count, uint64_t seed);

// Indices of the k nearest other columns of `points` for every column.
std::vector<std::vector<Eigen::Index>> NearestNeighbours(const Eigen::MatrixXd& points, int k);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLASSIFIER_SMOTE_H_
