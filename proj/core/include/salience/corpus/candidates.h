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

#ifndef SALIENCE_CORPUS_CANDIDATES_H_
#define SALIENCE_CORPUS_CANDIDATES_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "salience/corpus/types.h"

namespace salience {

enum class Provenance { kAnnotated, kSampledNegative, kExcludedPartial };

std::string_view ToString(Provenance p);

struct CandidateSpan {
  MentionSpan span;
  // Unset for ExcludedPartial candidates.
  std::optional<int> binary_label;
  Provenance provenance = Provenance::kAnnotated;

  bool operator==(const CandidateSpan&) const = default;
};

enum class CandidateMode { kTrain, kEval };

// Mentions of non-salient annotated entities: the detected-phrase pool used
// when no external keyphrase detector output is available.
std::vector<MentionSpan> DefaultDetectedPool(const Document& doc);

// Builds the scored candidate list of a document.
//  - every mention of a salient entity -> Annotated, label 1;
//  - a pool phrase identical in range to a salient mention is that positive;
//  - a pool phrase sharing no token with any salient mention ->
//    SampledNegative, label 0;
//  - a pool phrase sharing some tokens -> ExcludedPartial (dropped in Train
//    mode, kept and flagged in Eval mode).
// Pool phrases with the same range are deduplicated (first wins). Output is
// ordered by (token_start, token_end). Throws DomainError for a pool phrase
// outside the document.
std::vector<CandidateSpan> GenerateCandidates(const Document& doc,
                                              std::span<const MentionSpan> pool,
                                              CandidateMode mode);

// GenerateCandidates with DefaultDetectedPool.
std::vector<CandidateSpan> GenerateCandidates(const Document& doc,
                                              CandidateMode mode);

}  // namespace salience

#endif  // SALIENCE_CORPUS_CANDIDATES_H_
