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

#include "salience/corpus/split.h"

#include <cmath>
#include <numeric>
#include <string>

#include "salience/errors.h"
#include "salience/random.h"

namespace salience {

Corpus SplitCorpus(const Corpus& corpus, std::array<double, 3> ratios,
                   uint64_t seed) {
  double total = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw ConfigError("split ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("split ratios sum to " + std::to_string(total) +
                      ", expected 1");
  }
  const size_t n = corpus.documents.size();
  const auto n_train = std::min<size_t>(
      n, static_cast<size_t>(std::llround(ratios[0] * static_cast<double>(n))));
  const auto n_valid = std::min<size_t>(
      n - n_train,
      static_cast<size_t>(std::llround(ratios[1] * static_cast<double>(n))));

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  rng.Shuffle(order);

  Corpus out = corpus;
  for (size_t rank = 0; rank < n; ++rank) {
    Split s = rank < n_train             ? Split::kTrain
              : rank < n_train + n_valid ? Split::kValid
                                         : Split::kTest;
    out.documents[order[rank]].split = s;
  }
  return out;
}

}  // namespace salience
