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

#ifndef SALIENCE_ANALYSIS_STRATA_H_
#define SALIENCE_ANALYSIS_STRATA_H_

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "salience/corpus/types.h"
#include "salience/metrics/records.h"

namespace salience {

struct StratumReport {
  std::string bucket;
  size_t n = 0;
  size_t n_pos = 0;
  double positive_rate = 0.0;
  // Unset (and `flagged`) when the bucket holds no positive.
  std::optional<double> ap;
  bool flagged = false;
};

inline const std::vector<double> kPositionEdges = {1, 2, 5, 10, 20, 50, 100};
inline const std::vector<double> kFrequencyEdges = {
    1, 2, 5, 10, std::numeric_limits<double>::infinity()};

// Bucket = smallest edge >= 100 * (first mention start / document length).
std::vector<StratumReport> StratifyByPosition(
    std::span<const PredictionRecord> records, const Corpus& corpus,
    const std::vector<double>& edges = kPositionEdges);

// Bucket = smallest edge >= number of annotated mentions of the entity.
std::vector<StratumReport> StratifyByFrequency(
    std::span<const PredictionRecord> records, const Corpus& corpus,
    const std::vector<double>& edges = kFrequencyEdges);

// Seen iff a normalized surface of the entity in its document occurs as an
// annotated mention surface in the training split of `train_corpus`.
std::pair<StratumReport, StratumReport> SeenUnseen(
    std::span<const PredictionRecord> records, const Corpus& corpus,
    const Corpus& train_corpus);

}  // namespace salience

#endif  // SALIENCE_ANALYSIS_STRATA_H_
