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

#include "pseudoaudit/classifier/smote.h"

#include <algorithm>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pseudoaudit/util/random.h"

namespace pseudoaudit {

std::vector<std::vector<Eigen::Index>> NearestNeighbours(const Eigen::MatrixXd& points, int k) {
  const Eigen::Index n = points.cols();
  // Squared distances through the Gram matrix; exact ties are then broken by
  // index so the result does not depend on sort stability.
  const Eigen::VectorXd norms = points.colwise().squaredNorm().transpose();
  const Eigen::MatrixXd gram = points.transpose() * points;
  std::vector<std::vector<Eigen::Index>> neighbours(n);
  std::vector<Eigen::Index> order(n);
  std::vector<double> dist(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) dist[j] = norms(i) + norms(j) - 2.0 * gram(i, j);
    order.resize(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    order.erase(order.begin() + i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                        return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                      });
    neighbours[i].assign(order.begin(), order.begin() + k);
  }
  return neighbours;
}

absl::StatusOr<Eigen::MatrixXd> Smote(const Eigen::MatrixXd& minority, int k,
                                      Eigen::Index target_count, uint64_t seed) {
  const Eigen::Index n = minority.cols();
  if (n < 2) return absl::InvalidArgumentError("SMOTE needs at least 2 minority points");
  if (k < 1 || k > n - 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("SMOTE k=", k, " needs between 1 and ", n - 1, " neighbours"));
  }
  if (target_count < n) {
    return absl::InvalidArgumentError(
        absl::StrCat("target count ", target_count, " is below minority size ", n));
  }
  const Eigen::Index synthetic = target_count - n;
  Eigen::MatrixXd out(minority.rows(), synthetic);
  if (synthetic == 0) return out;

  const auto neighbours = NearestNeighbours(minority, k);
  Rng rng(seed);
  for (Eigen::Index s = 0; s < synthetic; ++s) {
    const auto p = static_cast<Eigen::Index>(rng.UniformIndex(n));
    const Eigen::Index q = neighbours[p][rng.UniformIndex(k)];
    const double u = rng.Uniform01();
    out.col(s) = minority.col(p) + u * (minority.col(q) - minority.col(p));
  }
  return out;
}

}  // namespace pseudoaudit
