// Copyright 2026 The Salience Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SALIENCE_RANDOM_H_
#define SALIENCE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace salience {

// Seeded generator with portable derived distributions. std::mt19937_64 has
// a standardized output sequence; the <random> distributions do not, so
// everything on top of the raw engine is implemented here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  uint64_t UniformInt(uint64_t n);

  // Uniform integer in [lo, hi] inclusive.
  int64_t UniformRange(int64_t lo, int64_t hi);

  // Standard normal via Box-Muller (one value per call, no caching).
  double Normal();

  bool Bernoulli(double p) { return Uniform() < p; }

  // Index drawn proportionally to non-negative weights.
  size_t Categorical(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = UniformInt(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // Seed for an independent child stream.
  uint64_t Fork() { return SplitMix(engine_()); }

  static uint64_t SplitMix(uint64_t x);

 private:
  std::mt19937_64 engine_;
};

}  // namespace salience

#endif  // SALIENCE_RANDOM_H_
