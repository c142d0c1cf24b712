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

#include "salience/corpus/corpus_io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "salience/errors.h"

namespace salience {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

class RecordReader {
 public:
  RecordReader(const json& j, const std::string& source, size_t line)
      : j_(j), source_(source), line_(line) {}

  [[noreturn]] void Fail(const std::string& field,
                         const std::string& what) const {
    throw FormatError(source_, line_, field, what);
  }

  const json& Field(const json& obj, const std::string& field,
                    const std::string& path) const {
    if (!obj.is_object()) Fail(path, "expected an object");
    auto it = obj.find(field);
    if (it == obj.end()) Fail(path + field, "missing");
    return *it;
  }

  std::string String(const json& obj, const std::string& field,
                     const std::string& path = "") const {
    const json& v = Field(obj, field, path);
    if (!v.is_string()) Fail(path + field, "expected a string");
    return v.get<std::string>();
  }

  int64_t Integer(const json& obj, const std::string& field,
                  const std::string& path) const {
    const json& v = Field(obj, field, path);
    if (!v.is_number_integer()) Fail(path + field, "expected an integer");
    return v.get<int64_t>();
  }

  std::vector<std::string> Strings(const json& obj, const std::string& field,
                                   const std::string& path) const {
    const json& v = Field(obj, field, path);
    if (!v.is_array()) Fail(path + field, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) Fail(path + field, "expected an array of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  const json& Array(const json& obj, const std::string& field) const {
    const json& v = Field(obj, field, "");
    if (!v.is_array()) Fail(field, "expected an array");
    return v;
  }

  const json& root() const { return j_; }

 private:
  const json& j_;
  const std::string& source_;
  size_t line_;
};

Document ParseDocument(const json& j, const TokenizerSpec& spec,
                       const std::string& source, size_t line) {
  RecordReader r(j, source, line);
  if (!j.is_object()) r.Fail("<record>", "expected a JSON object");
  Document doc;
  doc.doc_id = r.String(j, "doc_id");
  if (doc.doc_id.empty()) r.Fail("doc_id", "must be non-empty");
  doc.title = r.String(j, "title");
  doc.body = r.String(j, "body");
  try {
    doc.split = ParseSplit(r.String(j, "split"));
  } catch (const DomainError& e) {
    r.Fail("split", e.what());
  }

  const json& entities = r.Array(j, "entities");
  for (size_t i = 0; i < entities.size(); ++i) {
    const std::string path = "entities[" + std::to_string(i) + "].";
    const json& e = entities[i];
    EntityAnnotation a;
    a.entity_id = r.String(e, "entity_id", path);
    a.canonical_name = r.String(e, "canonical_name", path);
    a.aliases = r.Strings(e, "aliases", path);
    a.references = r.Strings(e, "references", path);
    const json& wiki = r.Field(e, "wiki_entity", path);
    if (wiki.is_string()) {
      a.wiki_entity = wiki.get<std::string>();
    } else if (!wiki.is_null()) {
      r.Fail(path + "wiki_entity", "expected a string or null");
    }
    try {
      a.label = ParseSalienceLevel(r.String(e, "salience", path));
    } catch (const DomainError& err) {
      r.Fail(path + "salience", err.what());
    }
    doc.annotations.push_back(std::move(a));
  }

  const json& mentions = r.Array(j, "mentions");
  for (size_t i = 0; i < mentions.size(); ++i) {
    const std::string path = "mentions[" + std::to_string(i) + "].";
    const json& m = mentions[i];
    MentionSpan span;
    span.entity_id = r.String(m, "entity_id", path);
    span.token_start = r.Integer(m, "token_start", path);
    span.token_end = r.Integer(m, "token_end", path);
    span.surface = r.String(m, "surface", path);
    doc.mentions.push_back(std::move(span));
  }

  Retokenize(doc, spec);
  try {
    ValidateDocument(doc);
  } catch (const DataError& e) {
    r.Fail("mentions", e.what());
  }
  return doc;
}

ojson DocumentToJson(const Document& doc) {
  ojson entities = ojson::array();
  for (const auto& e : doc.annotations) {
    entities.push_back({
        {"entity_id", e.entity_id},
        {"canonical_name", e.canonical_name},
        {"aliases", e.aliases},
        {"references", e.references},
        {"wiki_entity", e.wiki_entity ? ojson(*e.wiki_entity) : ojson(nullptr)},
        {"salience", std::string(ToString(e.label))},
    });
  }
  ojson mentions = ojson::array();
  for (const auto& m : doc.mentions) {
    mentions.push_back({{"entity_id", m.entity_id},
                        {"token_start", m.token_start},
                        {"token_end", m.token_end},
                        {"surface", m.surface}});
  }
  return {{"doc_id", doc.doc_id},     {"title", doc.title},
          {"body", doc.body},         {"split", std::string(ToString(doc.split))},
          {"entities", entities},     {"mentions", mentions}};
}

}  // namespace

Corpus ReadCorpus(std::istream& in, const TokenizerSpec& spec,
                  const std::string& source) {
  Corpus corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(source, line_no, "<json>", e.what());
    }
    corpus.documents.push_back(ParseDocument(j, spec, source, line_no));
  }
  return corpus;
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents) {
    out << DocumentToJson(doc).dump() << '\n';
  }
}

Corpus LoadCorpus(const std::string& path, const TokenizerSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus '" + path + "'");
  return ReadCorpus(in, spec, path);
}

void SaveCorpus(const Corpus& corpus, const std::string& path) {
  std::ostringstream out;
  WriteCorpus(corpus, out);
  WriteFileAtomic(path, out.str());
}

}  // namespace salience
