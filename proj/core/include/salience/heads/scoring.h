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

#ifndef SALIENCE_HEADS_SCORING_H_
#define SALIENCE_HEADS_SCORING_H_

#include <optional>
#include <span>
#include <vector>

#include "salience/corpus/types.h"
#include "salience/heads/model.h"
#include "salience/random.h"
#include "salience/tensor/autograd.h"

namespace salience {

// [mean, max] over rows [start, end) of `reps`. Empty spans are rejected.
Var PoolSpan(const Var& reps, size_t start, size_t end);

// Logits [n, 1] for features [n, in]; scores are sigmoid(logits).
Var ScorePooling(const SalienceModel& model, const Var& reps,
                 std::span<const std::pair<size_t, size_t>> rows);
Var ScoreTagging(const SalienceModel& model, const Var& tagged_reps,
                 std::span<const size_t> close_indices);
Var ScorePoolingWithTags(const SalienceModel& model, const Var& tagged_reps,
                         std::span<const std::pair<size_t, size_t>> inner);
Var ScoreStandard(const SalienceModel& model, const Var& reps);

// Sequence for the re-encode baseline: [CLS] mention [SEP] document, with the
// document tail (then the mention) truncated to fit max_len.
std::vector<TokenId> StandardInput(std::span<const TokenId> doc_ids,
                                   const MentionSpan& span, size_t max_len);

enum class PassMode {
  // One pass; tag-based heads score a single disjoint subset.
  kTraining,
  // Tag-based heads run partitioned passes until every candidate is scored.
  kInference,
};

struct DocumentScoring {
  // Rows follow `scored`; empty Var when nothing was scored.
  Var logits;
  std::vector<size_t> scored;
  // Candidates lying beyond the encoder window.
  std::vector<size_t> dropped;
  size_t encode_passes = 0;
};

// Spans index into `doc_ids` (document coordinates, no [CLS]).
DocumentScoring ScoreDocument(const SalienceModel& model,
                              std::span<const TokenId> doc_ids,
                              std::span<const MentionSpan> spans, PassMode mode,
                              Rng* dropout_rng = nullptr);

struct CandidateLogits {
  // Per input span; unset when dropped.
  std::vector<std::optional<double>> logits;
  std::vector<size_t> dropped;
  size_t encode_passes = 0;
};

// Inference without a graph.
CandidateLogits InferLogits(const SalienceModel& model,
                            std::span<const TokenId> doc_ids,
                            std::span<const MentionSpan> spans);

double TemperatureScore(double logit, double temperature = 1.0);

}  // namespace salience

#endif  // SALIENCE_HEADS_SCORING_H_
