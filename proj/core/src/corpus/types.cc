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

#include "salience/corpus/types.h"

#include <set>

#include "salience/errors.h"

namespace salience {

std::string_view ToString(SalienceLevel level) {
  switch (level) {
    case SalienceLevel::kPerfect:
      return "Perfect";
    case SalienceLevel::kExcellent:
      return "Excellent";
    case SalienceLevel::kGood:
      return "Good";
    case SalienceLevel::kBad:
      return "Bad";
  }
  return "Bad";
}

SalienceLevel ParseSalienceLevel(std::string_view name) {
  if (name == "Perfect") return SalienceLevel::kPerfect;
  if (name == "Excellent") return SalienceLevel::kExcellent;
  if (name == "Good") return SalienceLevel::kGood;
  if (name == "Bad") return SalienceLevel::kBad;
  throw DomainError("unknown salience level '" + std::string(name) + "'");
}

std::string_view ToString(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "valid") return Split::kValid;
  if (name == "test") return Split::kTest;
  throw DomainError("unknown split '" + std::string(name) + "'");
}

const EntityAnnotation* Document::FindEntity(std::string_view entity_id) const {
  for (const auto& e : annotations) {
    if (e.entity_id == entity_id) return &e;
  }
  return nullptr;
}

std::vector<const Document*> Corpus::DocumentsIn(Split split) const {
  std::vector<const Document*> out;
  for (const auto& d : documents) {
    if (d.split == split) out.push_back(&d);
  }
  return out;
}

size_t Corpus::CountIn(Split split) const {
  size_t n = 0;
  for (const auto& d : documents) n += d.split == split;
  return n;
}

void ValidateDocument(const Document& doc) {
  const std::string where = "document '" + doc.doc_id + "': ";
  if (doc.doc_id.empty()) throw DataError("document with empty doc_id");
  std::set<std::string_view> ids;
  for (const auto& e : doc.annotations) {
    if (e.entity_id.empty()) throw DataError(where + "entity with empty id");
    if (!ids.insert(e.entity_id).second) {
      throw DataError(where + "duplicate entity_id '" + e.entity_id + "'");
    }
    if (e.canonical_name.empty()) {
      throw DataError(where + "entity '" + e.entity_id +
                      "' has empty canonical_name");
    }
    if (e.wiki_entity && e.wiki_entity->empty()) {
      throw DataError(where + "entity '" + e.entity_id +
                      "' has empty wiki_entity");
    }
  }
  const auto n = static_cast<int64_t>(doc.words.size());
  for (const auto& m : doc.mentions) {
    if (!ids.contains(m.entity_id)) {
      throw DataError(where + "mention refers to unknown entity '" +
                      m.entity_id + "'");
    }
    if (m.token_start < 0 || m.token_start >= m.token_end || m.token_end > n) {
      throw DataError(where + "mention [" + std::to_string(m.token_start) +
                      ", " + std::to_string(m.token_end) +
                      ") outside document of " + std::to_string(n) + " tokens");
    }
  }
}

}  // namespace salience
