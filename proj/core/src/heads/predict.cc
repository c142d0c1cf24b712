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

#include "salience/heads/predict.h"

#include <algorithm>
#include <map>
#include <utility>

#include "salience/corpus/tokenizer.h"
#include "salience/heads/scoring.h"
#include "salience/parallel.h"

namespace salience {

std::string CandidateEntityKey(const CandidateSpan& candidate) {
  if (!candidate.span.entity_id.empty()) return candidate.span.entity_id;
  return "surface:" + NormalizeSurface(candidate.span.surface);
}

std::vector<PredictionRecord> BuildRecords(
    const std::vector<MentionPrediction>& mentions, Aggregation mode) {
  std::vector<PredictionRecord> out;
  std::map<std::pair<std::string, std::string>, size_t> index;
  std::vector<std::string> doc_order;
  std::map<std::string, std::vector<size_t>> per_doc;
  for (const auto& m : mentions) {
    if (!m.gold.has_value()) continue;
    const auto key = std::make_pair(m.doc_id, m.entity_id);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      PredictionRecord rec;
      rec.doc_id = m.doc_id;
      rec.entity_id = m.entity_id;
      out.push_back(std::move(rec));
      if (!per_doc.count(m.doc_id)) doc_order.push_back(m.doc_id);
      per_doc[m.doc_id].push_back(it->second);
    }
    PredictionRecord& rec = out[it->second];
    rec.mention_scores.push_back({m.token_start, m.token_end, m.score, m.logit});
    rec.gold = std::max(rec.gold, *m.gold);
  }
  for (auto& rec : out) Reaggregate(rec, mode);
  // Document order as given, entities sorted within each document.
  std::vector<PredictionRecord> ordered;
  ordered.reserve(out.size());
  for (const auto& doc : doc_order) {
    auto idx = per_doc[doc];
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return out[a].entity_id < out[b].entity_id;
    });
    for (size_t i : idx) ordered.push_back(std::move(out[i]));
  }
  return ordered;
}

PredictionSet PredictDocuments(const SalienceModel& model,
                               const std::vector<const Document*>& docs,
                               Aggregation mode) {
  struct DocResult {
    std::vector<MentionPrediction> mentions;
    size_t dropped = 0;
    size_t passes = 0;
  };
  std::vector<DocResult> results(docs.size());
  ParallelFor(docs.size(), [&](size_t d) {
    const Document& doc = *docs[d];
    const auto candidates = GenerateCandidates(doc, CandidateMode::kEval);
    std::vector<MentionSpan> spans;
    for (const auto& c : candidates) spans.push_back(c.span);
    const auto ids = model.DocumentIds(doc);
    const CandidateLogits scored = InferLogits(model, ids, spans);
    DocResult& r = results[d];
    r.dropped = scored.dropped.size();
    r.passes = scored.encode_passes;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (!scored.logits[i].has_value()) continue;
      MentionPrediction m;
      m.doc_id = doc.doc_id;
      m.entity_id = CandidateEntityKey(candidates[i]);
      m.token_start = candidates[i].span.token_start;
      m.token_end = candidates[i].span.token_end;
      m.logit = *scored.logits[i];
      m.score = TemperatureScore(m.logit);
      m.gold = candidates[i].binary_label;
      m.provenance = candidates[i].provenance;
      r.mentions.push_back(std::move(m));
    }
  });
  PredictionSet out;
  out.head_kind = std::string(ToString(model.head));
  for (auto& r : results) {
    out.dropped += r.dropped;
    out.encode_passes += r.passes;
    for (auto& m : r.mentions) out.mentions.push_back(std::move(m));
  }
  out.records = BuildRecords(out.mentions, mode);
  return out;
}

PredictionSet PredictCorpus(const SalienceModel& model, const Corpus& corpus,
                            Split split, Aggregation mode) {
  return PredictDocuments(model, corpus.DocumentsIn(split), mode);
}

}  // namespace salience
