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

#ifndef PSEUDOAUDIT_AUDIT_STATS_H_
#define PSEUDOAUDIT_AUDIT_STATS_H_

#include <array>
#include <cstdint>
#include <set>
#include <string>

#include "absl/status/statusor.h"

namespace pseudoaudit {

// |A ∩ B| / min(|A|, |B|). Both sets must be non-empty.
absl::StatusOr<double> OverlapCoefficient(const std::set<std::string>& a,
                                          const std::set<std::string>& b);

// Rows are the two groups, columns are (pseudoscience, other).
using ContingencyTable = std::array<std::array<uint64_t, 2>, 2>;

// Two-sided Fisher exact test: the total hypergeometric probability of every
// table with the observed margins that is no more likely than the observed
// one (relative slack 1e-12). Every margin must be positive.
absl::StatusOr<double> FisherExactTwoSided(const ContingencyTable& table);

// Unique videos seen and the pseudoscientific subset.
struct UniqueTally {
  std::set<std::string> all;
  std::set<std::string> pseudo;

  void Add(const std::string& id, bool is_pseudo) {
    all.insert(id);
    if (is_pseudo) pseudo.insert(id);
  }
  void Merge(const UniqueTally& other) {
    all.insert(other.all.begin(), other.all.end());
    pseudo.insert(other.pseudo.begin(), other.pseudo.end());
  }
  // 100 * |pseudo| / |all|; 0 when nothing was seen.
  double Percentage() const {
    return all.empty() ? 0.0 : 100.0 * static_cast<double>(pseudo.size()) / all.size();
  }

  bool operator==(const UniqueTally&) const = default;
};

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_AUDIT_STATS_H_
