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

#include "salience/corpus/candidates.h"

#include <algorithm>
#include <string>

#include "salience/corpus/labels.h"
#include "salience/errors.h"

namespace salience {

std::string_view ToString(Provenance p) {
  switch (p) {
    case Provenance::kAnnotated:
      return "annotated";
    case Provenance::kSampledNegative:
      return "sampled_negative";
    case Provenance::kExcludedPartial:
      return "excluded_partial";
  }
  return "annotated";
}

std::vector<MentionSpan> DefaultDetectedPool(const Document& doc) {
  std::vector<MentionSpan> pool;
  for (const auto& m : doc.mentions) {
    const EntityAnnotation* e = doc.FindEntity(m.entity_id);
    if (e != nullptr && !IsSalient(*e)) pool.push_back(m);
  }
  return pool;
}

std::vector<CandidateSpan> GenerateCandidates(const Document& doc,
                                              std::span<const MentionSpan> pool,
                                              CandidateMode mode) {
  const auto n = static_cast<int64_t>(doc.words.size());
  std::vector<CandidateSpan> out;
  std::vector<const MentionSpan*> salient;
  for (const auto& m : doc.mentions) {
    const EntityAnnotation* e = doc.FindEntity(m.entity_id);
    if (e == nullptr || !IsSalient(*e)) continue;
    const bool duplicate =
        std::any_of(salient.begin(), salient.end(),
                    [&](const MentionSpan* s) { return s->SameRange(m); });
    if (duplicate) continue;
    salient.push_back(&m);
    out.push_back({m, 1, Provenance::kAnnotated});
  }

  std::vector<const MentionSpan*> seen;
  for (const auto& phrase : pool) {
    if (phrase.token_start < 0 || phrase.token_start >= phrase.token_end ||
        phrase.token_end > n) {
      throw DomainError("detected phrase [" +
                        std::to_string(phrase.token_start) + ", " +
                        std::to_string(phrase.token_end) +
                        ") outside document '" + doc.doc_id + "' of " +
                        std::to_string(n) + " tokens");
    }
    const bool repeated =
        std::any_of(seen.begin(), seen.end(),
                    [&](const MentionSpan* s) { return s->SameRange(phrase); });
    if (repeated) continue;
    seen.push_back(&phrase);

    bool exact = false;
    bool shares = false;
    for (const MentionSpan* s : salient) {
      if (s->SameRange(phrase)) exact = true;
      if (Overlaps(*s, phrase)) shares = true;
    }
    if (exact) continue;  // already present as the annotated positive
    if (!shares) {
      out.push_back({phrase, 0, Provenance::kSampledNegative});
    } else if (mode == CandidateMode::kEval) {
      out.push_back({phrase, std::nullopt, Provenance::kExcludedPartial});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateSpan& a, const CandidateSpan& b) {
                     if (a.span.token_start != b.span.token_start) {
                       return a.span.token_start < b.span.token_start;
                     }
                     return a.span.token_end < b.span.token_end;
                   });
  return out;
}

std::vector<CandidateSpan> GenerateCandidates(const Document& doc,
                                              CandidateMode mode) {
  const std::vector<MentionSpan> pool = DefaultDetectedPool(doc);
  return GenerateCandidates(doc, pool, mode);
}

}  // namespace salience
