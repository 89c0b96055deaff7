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

#include "pseudoaudit/audit/stats.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"

namespace pseudoaudit {
namespace {

double LogFactorial(uint64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

absl::StatusOr<double> OverlapCoefficient(const std::set<std::string>& a,
                                          const std::set<std::string>& b) {
  if (a.empty() || b.empty()) {
    return absl::InvalidArgumentError("overlap coefficient of an empty set");
  }
  size_t shared = 0;
  for (const std::string& x : a) shared += b.count(x);
  return static_cast<double>(shared) / static_cast<double>(std::min(a.size(), b.size()));
}

absl::StatusOr<double> FisherExactTwoSided(const ContingencyTable& table) {
  const uint64_t r1 = table[0][0] + table[0][1];
  const uint64_t r2 = table[1][0] + table[1][1];
  const uint64_t c1 = table[0][0] + table[1][0];
  const uint64_t c2 = table[0][1] + table[1][1];
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) {
    return absl::InvalidArgumentError("Fisher exact test needs positive margins");
  }
  const uint64_t n = r1 + r2;
  const double log_norm = LogFactorial(r1) + LogFactorial(r2) + LogFactorial(c1) +
                          LogFactorial(c2) - LogFactorial(n);
  // Probability of the table whose top-left cell is x.
  auto prob = [&](uint64_t x) {
    return std::exp(log_norm - LogFactorial(x) - LogFactorial(r1 - x) - LogFactorial(c1 - x) -
                    LogFactorial(r2 + x - c1));
  };
  const double observed = prob(table[0][0]);
  const uint64_t lo = c1 > r2 ? c1 - r2 : 0;
  const uint64_t hi = std::min(r1, c1);
  double p = 0.0;
  for (uint64_t x = lo; x <= hi; ++x) {
    const double px = prob(x);
    if (px <= observed * (1.0 + 1e-12)) p += px;
  }
  return std::min(p, 1.0);
}

}  // namespace pseudoaudit
