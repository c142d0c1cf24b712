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

#ifndef SALIENCE_CORPUS_SPLIT_H_
#define SALIENCE_CORPUS_SPLIT_H_

#include <array>
#include <cstdint>

#include "salience/corpus/types.h"

namespace salience {

// Assigns Train/Valid/Test to every document. Counts are
// round(train * n), round(valid * n) and the remainder, so the partition is
// exact and exhaustive. Ratios must be non-negative and sum to 1 (within
// 1e-9), otherwise ConfigError. Deterministic in `seed`.
Corpus SplitCorpus(const Corpus& corpus, std::array<double, 3> ratios,
                   uint64_t seed);

}  // namespace salience

#endif  // SALIENCE_CORPUS_SPLIT_H_
