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

#include "salience/analysis/strata.h"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "salience/corpus/tokenizer.h"
#include "salience/errors.h"
#include "salience/metrics/metrics.h"

namespace salience {
namespace {

const Document& FindDocument(
    const std::unordered_map<std::string, const Document*>& docs,
    const std::string& id) {
  auto it = docs.find(id);
  if (it == docs.end()) {
    throw DataError("record refers to unknown document '" + id + "'");
  }
  return *it->second;
}

std::unordered_map<std::string, const Document*> IndexDocuments(
    const Corpus& corpus) {
  std::unordered_map<std::string, const Document*> out;
  for (const auto& d : corpus.documents) out.emplace(d.doc_id, &d);
  return out;
}

std::vector<const MentionSpan*> EntityMentions(const Document& doc,
                                               const std::string& entity_id) {
  std::vector<const MentionSpan*> out;
  for (const auto& m : doc.mentions) {
    if (m.entity_id == entity_id) out.push_back(&m);
  }
  return out;
}

std::string FormatEdge(double v) {
  if (std::isinf(v)) return "inf";
  if (v == std::floor(v)) return std::to_string(static_cast<long long>(v));
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  return s;
}

StratumReport Summarize(std::string label,
                        const std::vector<PredictionRecord>& members) {
  StratumReport r;
  r.bucket = std::move(label);
  r.n = members.size();
  for (const auto& m : members) r.n_pos += m.gold == 1 ? 1 : 0;
  if (r.n > 0) {
    r.positive_rate = static_cast<double>(r.n_pos) / static_cast<double>(r.n);
  }
  if (r.n_pos > 0) {
    r.ap = AveragePrecision(members).ap;
  } else {
    r.flagged = true;
  }
  return r;
}

std::vector<StratumReport> Bucketize(std::span<const PredictionRecord> records,
                                     const std::vector<double>& values,
                                     const std::vector<double>& edges,
                                     bool integer_ranges) {
  if (edges.empty()) throw ConfigError("stratification needs edges");
  for (size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw ConfigError("stratification edges must increase");
    }
  }
  std::vector<std::vector<PredictionRecord>> groups(edges.size());
  for (size_t i = 0; i < records.size(); ++i) {
    size_t b = 0;
    while (b + 1 < edges.size() && values[i] > edges[b]) ++b;
    if (values[i] > edges[b]) {
      throw DomainError("value beyond the last stratification edge");
    }
    groups[b].push_back(records[i]);
  }
  std::vector<StratumReport> out;
  for (size_t b = 0; b < edges.size(); ++b) {
    std::string label = FormatEdge(edges[b]);
    if (integer_ranges) {
      const double lo = b == 0 ? edges[0] : std::floor(edges[b - 1]) + 1;
      if (std::isinf(edges[b])) {
        label = FormatEdge(lo) + "+";
      } else if (lo < edges[b]) {
        label = FormatEdge(lo) + "-" + FormatEdge(edges[b]);
      }
    }
    out.push_back(Summarize(std::move(label), groups[b]));
  }
  return out;
}

}  // namespace

std::vector<StratumReport> StratifyByPosition(
    std::span<const PredictionRecord> records, const Corpus& corpus,
    const std::vector<double>& edges) {
  const auto docs = IndexDocuments(corpus);
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& rec : records) {
    const Document& doc = FindDocument(docs, rec.doc_id);
    int64_t first = -1;
    for (const MentionSpan* m : EntityMentions(doc, rec.entity_id)) {
      if (first < 0 || m->token_start < first) first = m->token_start;
    }
    for (const auto& m : rec.mention_scores) {
      if (first < 0 || m.token_start < first) first = m.token_start;
    }
    if (first < 0 || doc.words.empty()) {
      throw DataError("record '" + rec.entity_id + "' has no mention position");
    }
    values.push_back(100.0 * static_cast<double>(first) /
                     static_cast<double>(doc.words.size()));
  }
  return Bucketize(records, values, edges, false);
}

std::vector<StratumReport> StratifyByFrequency(
    std::span<const PredictionRecord> records, const Corpus& corpus,
    const std::vector<double>& edges) {
  const auto docs = IndexDocuments(corpus);
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& rec : records) {
    const Document& doc = FindDocument(docs, rec.doc_id);
    size_t count = EntityMentions(doc, rec.entity_id).size();
    if (count == 0) count = rec.mention_scores.size();
    values.push_back(static_cast<double>(count));
  }
  return Bucketize(records, values, edges, true);
}

std::pair<StratumReport, StratumReport> SeenUnseen(
    std::span<const PredictionRecord> records, const Corpus& corpus,
    const Corpus& train_corpus) {
  std::unordered_set<std::string> seen_surfaces;
  for (const Document* doc : train_corpus.DocumentsIn(Split::kTrain)) {
    for (const auto& m : doc->mentions) {
      seen_surfaces.insert(NormalizeSurface(m.surface));
    }
  }
  const auto docs = IndexDocuments(corpus);
  std::vector<PredictionRecord> seen, unseen;
  for (const auto& rec : records) {
    const Document& doc = FindDocument(docs, rec.doc_id);
    std::vector<std::string> surfaces;
    for (const MentionSpan* m : EntityMentions(doc, rec.entity_id)) {
      surfaces.push_back(NormalizeSurface(m->surface));
    }
    if (surfaces.empty() && rec.entity_id.rfind("surface:", 0) == 0) {
      surfaces.push_back(rec.entity_id.substr(8));
    }
    bool is_seen = false;
    for (const auto& s : surfaces) is_seen = is_seen || seen_surfaces.count(s);
    (is_seen ? seen : unseen).push_back(rec);
  }
  return {Summarize("seen", seen), Summarize("unseen", unseen)};
}

}  // namespace salience
