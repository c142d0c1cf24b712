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

#ifndef SALIENCE_HEADS_PREDICT_H_
#define SALIENCE_HEADS_PREDICT_H_

#include <optional>
#include <string>
#include <vector>

#include "salience/corpus/candidates.h"
#include "salience/corpus/types.h"
#include "salience/heads/model.h"
#include "salience/metrics/records.h"

namespace salience {

// One scored candidate mention.
struct MentionPrediction {
  std::string doc_id;
  std::string entity_id;
  int64_t token_start = 0;
  int64_t token_end = 0;
  double logit = 0.0;
  double score = 0.0;
  std::optional<int> gold;
  Provenance provenance = Provenance::kAnnotated;
};

struct PredictionSet {
  std::string head_kind;
  // Ordered by (doc order, span).
  std::vector<MentionPrediction> mentions;
  // Entity-level records over labeled candidates, ordered by (doc, entity).
  std::vector<PredictionRecord> records;
  size_t dropped = 0;
  size_t encode_passes = 0;
};

// Entity key of a candidate: its entity id, or "surface:<normalized>".
std::string CandidateEntityKey(const CandidateSpan& candidate);

// Builds entity records from labeled mention predictions.
std::vector<PredictionRecord> BuildRecords(
    const std::vector<MentionPrediction>& mentions, Aggregation mode);

// Scores every eval-mode candidate of the documents in `split`.
PredictionSet PredictCorpus(const SalienceModel& model, const Corpus& corpus,
                            Split split,
                            Aggregation mode = Aggregation::kFirst);

PredictionSet PredictDocuments(const SalienceModel& model,
                               const std::vector<const Document*>& docs,
                               Aggregation mode = Aggregation::kFirst);

}  // namespace salience

#endif  // SALIENCE_HEADS_PREDICT_H_
