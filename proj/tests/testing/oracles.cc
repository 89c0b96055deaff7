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

#include "testing/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pseudoaudit::testing {
namespace {

using int128 = __int128;

uint64_t Choose(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Activations {
  std::vector<Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>> pre;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> logits;
};

Activations ForwardLong(const FusingNetwork& net, const Eigen::MatrixXd& inputs) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Activations out;
  MatL h = inputs.cast<long double>();
  const auto& layers = net.layers();
  for (size_t l = 0; l < layers.size(); ++l) {
    MatL z = layers[l].weight.cast<long double>() * h;
    z.colwise() += layers[l].bias.cast<long double>();
    if (l + 1 == layers.size()) {
      out.logits = z;
    } else {
      out.pre.push_back(z);
      h = z.cwiseMax(0.0L);
    }
  }
  return out;
}

}  // namespace

double OracleFleissKappa(const std::vector<std::vector<int>>& counts, int raters) {
  const size_t items = counts.size();
  const size_t categories = counts.empty() ? 0 : counts[0].size();
  long double agreement_sum = 0.0L;
  std::vector<long double> category_totals(categories, 0.0L);
  for (const auto& row : counts) {
    std::vector<size_t> ratings;
    for (size_t j = 0; j < categories; ++j) {
      for (int r = 0; r < row[j]; ++r) ratings.push_back(j);
      category_totals[j] += row[j];
    }
    int agreeing_pairs = 0;
    for (size_t x = 0; x < ratings.size(); ++x) {
      for (size_t y = 0; y < ratings.size(); ++y) {
        if (x != y && ratings[x] == ratings[y]) ++agreeing_pairs;
      }
    }
    agreement_sum += static_cast<long double>(agreeing_pairs) / (raters * (raters - 1));
  }
  const long double observed = agreement_sum / items;
  long double expected = 0.0L;
  for (long double t : category_totals) {
    const long double p = t / (static_cast<long double>(items) * raters);
    expected += p * p;
  }
  if (expected == 1.0L) return 1.0;
  return static_cast<double>((observed - expected) / (1.0L - expected));
}

double OracleFisher(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  const uint64_t row1 = a + b;
  const uint64_t row2 = c + d;
  const uint64_t col1 = a + c;
  // Every table is (x, row1 - x, col1 - x, row2 - col1 + x); its probability
  // is Choose(row1, x) * Choose(row2, col1 - x) / Choose(row1 + row2, col1), so tables
  // can be ranked by the integer numerator alone.
  auto weight = [&](uint64_t x) -> int128 {
    return static_cast<int128>(Choose(row1, x)) * static_cast<int128>(Choose(row2, col1 - x));
  };
  const int128 observed = weight(a);
  const uint64_t lo = col1 > row2 ? col1 - row2 : 0;
  const uint64_t hi = std::min(row1, col1);
  int128 tail = 0;
  int128 total = 0;
  for (uint64_t x = lo; x <= hi; ++x) {
    const int128 w = weight(x);
    total += w;
    if (w <= observed) tail += w;
  }
  return static_cast<double>(static_cast<long double>(tail) / static_cast<long double>(total));
}

double OracleOverlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  int common = 0;
  for (const std::string& x : a) {
    for (const std::string& y : b) {
      if (x == y) {
        ++common;
        break;
      }
    }
  }
  return static_cast<double>(common) / static_cast<double>(std::min(a.size(), b.size()));
}

OracleConfusion CountConfusion(const std::vector<bool>& truth, const std::vector<bool>& predicted) {
  OracleConfusion c;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] && predicted[i]) ++c.tp;
    if (!truth[i] && predicted[i]) ++c.fp;
    if (!truth[i] && !predicted[i]) ++c.tn;
    if (truth[i] && !predicted[i]) ++c.fn;
  }
  return c;
}

OracleWeighted WeightedFromConfusion(const OracleConfusion& c) {
  auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
  const double n = c.tp + c.fp + c.tn + c.fn;
  // Positive class is pseudoscience; the negative class swaps roles.
  const double p_pos = ratio(c.tp, c.tp + c.fp);
  const double r_pos = ratio(c.tp, c.tp + c.fn);
  const double f_pos = ratio(2 * p_pos * r_pos, p_pos + r_pos);
  const double p_neg = ratio(c.tn, c.tn + c.fn);
  const double r_neg = ratio(c.tn, c.tn + c.fp);
  const double f_neg = ratio(2 * p_neg * r_neg, p_neg + r_neg);
  const double w_pos = ratio(c.tp + c.fn, n);
  const double w_neg = ratio(c.tn + c.fp, n);
  OracleWeighted w;
  w.accuracy = ratio(c.tp + c.tn, n);
  w.precision = w_pos * p_pos + w_neg * p_neg;
  w.recall = w_pos * r_pos + w_neg * r_neg;
  w.f1 = w_pos * f_pos + w_neg * f_neg;
  return w;
}

namespace {

long double LossOf(const Activations& act, const std::vector<int>& labels) {
  long double loss = 0.0L;
  for (Eigen::Index col = 0; col < act.logits.cols(); ++col) {
    const long double z0 = act.logits(0, col);
    const long double z1 = act.logits(1, col);
    const long double m = std::max(z0, z1);
    const long double log_norm = m + std::log(std::exp(z0 - m) + std::exp(z1 - m));
    loss -= (labels[col] == 1 ? z1 : z0) - log_norm;
  }
  return loss / act.logits.cols();
}

bool SamePattern(const Activations& x, const Activations& y) {
  for (size_t l = 0; l < x.pre.size(); ++l) {
    for (Eigen::Index i = 0; i < x.pre[l].size(); ++i) {
      if ((x.pre[l].data()[i] > 0) != (y.pre[l].data()[i] > 0)) return false;
    }
  }
  return true;
}

}  // namespace

long double OracleLoss(const FusingNetwork& net, const Eigen::MatrixXd& inputs,
                       const std::vector<int>& labels) {
  return LossOf(ForwardLong(net, inputs), labels);
}

bool SameActivationPattern(const FusingNetwork& a, const FusingNetwork& b,
                           const Eigen::MatrixXd& inputs) {
  return SamePattern(ForwardLong(a, inputs), ForwardLong(b, inputs));
}

GradientCheck CheckGradients(const FusingNetwork& net, const Eigen::MatrixXd& inputs,
                             const std::vector<int>& labels, int per_layer, double step,
                             uint64_t seed) {
  FusingNetwork::Gradients grads;
  net.LossAndGradients(inputs, labels, /*dropout_rng=*/nullptr, &grads);
  Rng rng(seed);
  GradientCheck result;
  // Returns false when the perturbation crosses a kink.
  auto measure = [&](const FusingNetwork& plus, const FusingNetwork& minus, double analytic) {
    const Activations up = ForwardLong(plus, inputs);
    const Activations down = ForwardLong(minus, inputs);
    if (!SamePattern(up, down)) {
      ++result.skipped_at_kink;
      return false;
    }
    const long double numeric = (LossOf(up, labels) - LossOf(down, labels)) / (2.0L * step);
    const double n = static_cast<double>(numeric);
    const double denom = std::max({std::abs(analytic), std::abs(n), 1e-6});
    result.max_relative_error = std::max(result.max_relative_error, std::abs(analytic - n) / denom);
    ++result.checked;
    return true;
  };
  for (int l = 0; l < FusingNetwork::kLayers; ++l) {
    const auto& layer = net.layers()[l];
    for (int done = 0, tries = 0; done < per_layer && tries < 20 * per_layer; ++tries) {
      const auto r = static_cast<Eigen::Index>(rng.UniformIndex(layer.weight.rows()));
      const auto c = static_cast<Eigen::Index>(rng.UniformIndex(layer.weight.cols()));
      FusingNetwork plus = net;
      FusingNetwork minus = net;
      plus.mutable_layers()[l].weight(r, c) += step;
      minus.mutable_layers()[l].weight(r, c) -= step;
      if (measure(plus, minus, grads.weight[l](r, c))) ++done;
    }
    for (int done = 0, tries = 0; done < per_layer && tries < 20 * per_layer; ++tries) {
      const auto r = static_cast<Eigen::Index>(rng.UniformIndex(layer.bias.size()));
      FusingNetwork plus = net;
      FusingNetwork minus = net;
      plus.mutable_layers()[l].bias(r) += step;
      minus.mutable_layers()[l].bias(r) -= step;
      if (measure(plus, minus, grads.bias[l](r))) ++done;
    }
  }
  return result;
}

FusingNetwork RandomNetwork(uint64_t seed) {
  FusingNetwork net = FusingNetwork::HeUniform(seed);
  Rng rng(DeriveKey(seed, "bias"));
  for (auto& layer : net.mutable_layers()) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = rng.Uniform(-0.1, 0.1);
  }
  return net;
}

Eigen::MatrixXd OracleSmote(const Eigen::MatrixXd& minority, int k, Eigen::Index target,
                            uint64_t seed) {
  const Eigen::Index n = minority.cols();
  std::vector<std::vector<Eigen::Index>> neighbours(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::pair<double, Eigen::Index>> d;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) d.push_back({(minority.col(i) - minority.col(j)).squaredNorm(), j});
    }
    std::sort(d.begin(), d.end());
    for (int t = 0; t < k; ++t) neighbours[i].push_back(d[t].second);
  }
  Eigen::MatrixXd out(minority.rows(), target - n);
  Rng rng(seed);
  for (Eigen::Index s = 0; s < out.cols(); ++s) {
    const auto p = static_cast<Eigen::Index>(rng.UniformIndex(n));
    const Eigen::Index q = neighbours[p][rng.UniformIndex(k)];
    const double u = rng.Uniform01();
    for (Eigen::Index r = 0; r < minority.rows(); ++r) {
      out(r, s) = minority(r, p) + u * (minority(r, q) - minority(r, p));
    }
  }
  return out;
}

bool InsideBoundingBox(const Eigen::MatrixXd& points, const Eigen::MatrixXd& reference,
                       double eps) {
  const Eigen::VectorXd lo = reference.rowwise().minCoeff();
  const Eigen::VectorXd hi = reference.rowwise().maxCoeff();
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      if (points(r, c) < lo(r) - eps || points(r, c) > hi(r) + eps) return false;
    }
  }
  return true;
}

}  // namespace pseudoaudit::testing
