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

#include "pseudoaudit/classifier/metrics.h"

#include <cmath>

#include "absl/status/status.h"

namespace pseudoaudit {
namespace {

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics ForClass(size_t tp, size_t fp, size_t fn) {
  ClassMetrics m;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  m.support = tp + fn;
  return m;
}

}  // namespace

Metrics ComputeMetrics(const std::vector<bool>& truth, const std::vector<bool>& predicted) {
  Metrics m;
  ConfusionMatrix& cm = m.confusion;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] && predicted[i]) ++cm.true_positives;
    if (!truth[i] && predicted[i]) ++cm.false_positives;
    if (!truth[i] && !predicted[i]) ++cm.true_negatives;
    if (truth[i] && !predicted[i]) ++cm.false_negatives;
  }
  m.pseudoscience = ForClass(cm.true_positives, cm.false_positives, cm.false_negatives);
  m.other = ForClass(cm.true_negatives, cm.false_negatives, cm.false_positives);
  const size_t total = cm.total();
  m.accuracy = Ratio(cm.true_positives + cm.true_negatives, total);
  if (total > 0) {
    const double wp = static_cast<double>(m.pseudoscience.support) / total;
    const double wo = static_cast<double>(m.other.support) / total;
    m.precision = wp * m.pseudoscience.precision + wo * m.other.precision;
    m.recall = wp * m.pseudoscience.recall + wo * m.other.recall;
    m.f1 = wp * m.pseudoscience.f1 + wo * m.other.f1;
  }
  return m;
}

Metrics MetricsAtThreshold(std::span<const ScoredSample> samples, double threshold) {
  std::vector<bool> truth(samples.size());
  std::vector<bool> predicted(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    truth[i] = samples[i].truth;
    predicted[i] = samples[i].p_pseudo >= threshold;
  }
  return ComputeMetrics(truth, predicted);
}

std::vector<double> ThresholdGrid(double step) {
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    double t = std::round(i * step * 1e12) / 1e12;
    if (t > 1.0) break;
    grid.push_back(t);
    if (t == 1.0) break;
  }
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

absl::StatusOr<double> ThresholdMoving(std::span<const ScoredSample> samples, double step) {
  if (samples.empty()) return absl::InvalidArgumentError("no predictions to tune a threshold on");
  if (!(step > 0.0 && step < 1.0)) {
    return absl::InvalidArgumentError("threshold grid step must be in (0, 1)");
  }
  double best_threshold = 0.0;
  double best_f1 = -1.0;
  for (double t : ThresholdGrid(step)) {
    const double f1 = MetricsAtThreshold(samples, t).f1;
    if (f1 >= best_f1) {
      best_f1 = f1;
      best_threshold = t;
    }
  }
  return best_threshold;
}

}  // namespace pseudoaudit
