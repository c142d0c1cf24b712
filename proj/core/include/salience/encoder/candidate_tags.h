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

#ifndef SALIENCE_ENCODER_CANDIDATE_TAGS_H_
#define SALIENCE_ENCODER_CANDIDATE_TAGS_H_

#include <span>
#include <utility>
#include <vector>

#include "salience/corpus/tokenizer.h"
#include "salience/corpus/types.h"

namespace salience {

struct TaggedSequence {
  std::vector<TokenId> tokens;
  // Per input span, in input order: position of its closing tag.
  std::vector<size_t> close_indices;
  // Per input span: [begin, end) of its inner tokens in tagged coordinates.
  std::vector<std::pair<size_t, size_t>> inner_spans;
};

// Wraps every span in open/close tags. Spans index into `tokens` and may be
// given in any order but must be pairwise disjoint. A `max_len` of 0 means
// no length limit.
TaggedSequence InsertCandidateTags(std::span<const TokenId> tokens,
                                   std::span<const MentionSpan> spans,
                                   size_t max_len = 0);

std::vector<TokenId> StripCandidateTags(std::span<const TokenId> tokens);

}  // namespace salience

#endif  // SALIENCE_ENCODER_CANDIDATE_TAGS_H_
