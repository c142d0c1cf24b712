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

#include "salience/corpus/labels.h"

#include <string>

#include "salience/errors.h"

namespace salience {

int Binarize(SalienceLevel level) {
  return level == SalienceLevel::kBad ? 0 : 1;
}

int BinarizeOrdinal(double score, double threshold, ThresholdMode mode) {
  if (!(score >= 0.0 && score <= 3.0)) {
    throw DomainError("ordinal salience score " + std::to_string(score) +
                      " outside [0, 3]");
  }
  if (!(threshold >= 0.0 && threshold <= 3.0)) {
    throw DomainError("ordinal threshold " + std::to_string(threshold) +
                      " outside [0, 3]");
  }
  return mode == ThresholdMode::kInclusive ? score >= threshold
                                           : score > threshold;
}

}  // namespace salience
