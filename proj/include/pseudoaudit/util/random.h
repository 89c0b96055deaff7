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

#ifndef PSEUDOAUDIT_UTIL_RANDOM_H_
#define PSEUDOAUDIT_UTIL_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace pseudoaudit {

// 64-bit FNV-1a. Stable across platforms and runs, unlike std::hash.
uint64_t Fnv1a64(std::string_view bytes, uint64_t basis = 0xcbf29ce484222325ULL);

// SplitMix64 finalizer; a bijective avalanche mix.
uint64_t Mix64(uint64_t x);

// Derives a stream key from a root seed and an ordered list of labels.
// Every piece of simulator and training randomness is keyed through this so
// results depend only on (seed, labels), never on call order elsewhere.
class KeyBuilder {
 public:
  explicit KeyBuilder(uint64_t seed) : state_(Mix64(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  KeyBuilder& Add(std::string_view label) {
    state_ = Mix64(state_ ^ Fnv1a64(label));
    return *this;
  }
  KeyBuilder& Add(uint64_t value) {
    state_ = Mix64(state_ + 0x632be59bd9b4e019ULL + Mix64(value));
    return *this;
  }
  uint64_t key() const { return state_; }

 private:
  uint64_t state_;
};

template <typename... Parts>
uint64_t DeriveKey(uint64_t seed, const Parts&... parts) {
  KeyBuilder builder(seed);
  (builder.Add(parts), ...);
  return builder.key();
}

// Maps a derived key to [0, 1) with 53 bits of resolution.
inline double KeyToUnit(uint64_t key) { return static_cast<double>(key >> 11) * 0x1.0p-53; }

// Deterministic random source. The engine's output sequence is fixed by the
// standard; the distributions below are implemented here because the
// <random> distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform in [0, n); n must be positive.
  uint64_t UniformIndex(uint64_t n);

  double StandardNormal();

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (size_t i = values.size(); i > 1; --i) {
      const size_t j = UniformIndex(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_UTIL_RANDOM_H_
