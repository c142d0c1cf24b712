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

#ifndef SALIENCE_CORPUS_LABELS_H_
#define SALIENCE_CORPUS_LABELS_H_

#include "salience/corpus/types.h"

namespace salience {

// Perfect / Excellent / Good -> 1, Bad -> 0.
int Binarize(SalienceLevel level);

enum class ThresholdMode {
  kInclusive,  // salient iff score >= threshold (default)
  kStrict,     // salient iff score > threshold
};

// Binarizes an averaged ordinal judgement on the 0..3 scale. Throws
// DomainError when score or threshold lies outside [0, 3].
int BinarizeOrdinal(double score, double threshold = 2.0,
                    ThresholdMode mode = ThresholdMode::kInclusive);

inline bool IsSalient(const EntityAnnotation& e) { return Binarize(e.label) == 1; }

}  // namespace salience

#endif  // SALIENCE_CORPUS_LABELS_H_
