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

#ifndef SALIENCE_CORPUS_COVERAGE_H_
#define SALIENCE_CORPUS_COVERAGE_H_

#include <cstddef>

#include "salience/corpus/types.h"

namespace salience {

struct WindowCoverage {
  double salient = 0.0;
  double non_salient = 0.0;
  size_t n_salient = 0;
  size_t n_non_salient = 0;
};

// Fraction of entities whose first mention lies entirely within the first
// `window` tokens, separately for salient and non-salient entities. A class
// with no entities reports 1.0. Throws DataError when the corpus has no
// mentions at all.
WindowCoverage CoverageWithinWindow(const Corpus& corpus, size_t window);

}  // namespace salience

#endif  // SALIENCE_CORPUS_COVERAGE_H_
