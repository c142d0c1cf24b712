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

#ifndef SALIENCE_CORPUS_TYPES_H_
#define SALIENCE_CORPUS_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace salience {

// Four-level annotation scale. Perfect, Excellent and Good count as salient.
enum class SalienceLevel { kPerfect, kExcellent, kGood, kBad };

std::string_view ToString(SalienceLevel level);
// Throws DomainError on an unknown name.
SalienceLevel ParseSalienceLevel(std::string_view name);

struct EntityAnnotation {
  std::string entity_id;
  std::string canonical_name;
  std::vector<std::string> aliases;
  std::vector<std::string> references;
  std::optional<std::string> wiki_entity;
  SalienceLevel label = SalienceLevel::kBad;

  bool operator==(const EntityAnnotation&) const = default;
};

// Half-open token range [token_start, token_end) over Document::words.
struct MentionSpan {
  std::string entity_id;
  int64_t token_start = 0;
  int64_t token_end = 0;
  std::string surface;

  int64_t length() const { return token_end - token_start; }
  bool SameRange(const MentionSpan& o) const {
    return token_start == o.token_start && token_end == o.token_end;
  }
  bool operator==(const MentionSpan&) const = default;
};

// True when the two ranges share at least one token.
inline bool Overlaps(const MentionSpan& a, const MentionSpan& b) {
  return a.token_start < b.token_end && b.token_start < a.token_end;
}

enum class Split { kTrain, kValid, kTest };

std::string_view ToString(Split split);
Split ParseSplit(std::string_view name);

struct Document {
  std::string doc_id;
  std::string title;
  std::string body;
  // Preprocessed word tokens: title words, "[SEP]", body words. Mention
  // indices refer to this sequence. Derived from (title, body, spec).
  std::vector<std::string> words;
  std::vector<EntityAnnotation> annotations;
  std::vector<MentionSpan> mentions;
  Split split = Split::kTrain;

  // nullptr when the id is unknown.
  const EntityAnnotation* FindEntity(std::string_view entity_id) const;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;

  std::vector<const Document*> DocumentsIn(Split split) const;
  size_t CountIn(Split split) const;

  bool operator==(const Corpus&) const = default;
};

// Checks the Document invariants: unique entity ids, non-empty canonical
// names, every mention resolving to one entity and lying within words.
// Throws DataError naming the document and offending item.
void ValidateDocument(const Document& doc);

}  // namespace salience

#endif  // SALIENCE_CORPUS_TYPES_H_
