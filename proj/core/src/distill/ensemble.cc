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

#include "salience/distill/ensemble.h"

#include <algorithm>
#include <cmath>

#include "salience/corpus/candidates.h"
#include "salience/errors.h"
#include "salience/heads/scoring.h"
#include "salience/parallel.h"
#include "salience/tensor/ops.h"

namespace salience {

std::vector<MemberRecipe> DefaultEnsembleRecipe() {
  return {{"pooling", HeadKind::kPooling, false, 0},
          {"pooling-disjoint", HeadKind::kPooling, true, 1},
          {"pooling-tags", HeadKind::kPoolingWithTags, false, 2},
          {"tagging", HeadKind::kTagging, false, 3}};
}

std::vector<MemberRecipe> SeedVariedRecipe(size_t n) {
  std::vector<MemberRecipe> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back({"pooling-seed" + std::to_string(i), HeadKind::kPooling,
                   false, i});
  }
  return out;
}

TeacherEnsemble TrainEnsemble(const Corpus& corpus,
                              const EncoderConfig& encoder,
                              const TrainConfig& base,
                              const std::vector<MemberRecipe>& recipe,
                              const MemberCallback& on_member) {
  if (recipe.empty()) throw ConfigError("ensemble needs at least one member");
  const Vocab vocab = Vocab::Build(corpus);
  TeacherEnsemble ensemble;
  for (const auto& r : recipe) {
    TrainConfig cfg = base;
    cfg.head_kind = r.head;
    cfg.non_overlapping_samples = r.non_overlapping_samples;
    cfg.seed = base.seed + r.seed_offset;
    TrainResult result = Train(corpus, encoder, cfg, vocab);
    if (on_member) on_member(r, result);
    ensemble.members.push_back(std::move(result.model));
  }
  return ensemble;
}

double ApplyTeacherTemperature(double p, double temperature) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (temperature == 1.0) return p;
  const double q =
      std::clamp(p, ops::kProbabilityClamp, 1.0 - ops::kProbabilityClamp);
  return TemperatureScore(std::log(q) - std::log1p(-q), temperature);
}

std::vector<std::optional<double>> EnsembleMeanScores(
    const TeacherEnsemble& ensemble, const Document& doc,
    std::span<const MentionSpan> spans, size_t* encode_passes) {
  std::vector<std::vector<double>> scores(spans.size());
  for (const auto& member : ensemble.members) {
    const auto scored = InferLogits(member, member.DocumentIds(doc), spans);
    if (encode_passes) *encode_passes += scored.encode_passes;
    for (size_t i = 0; i < spans.size(); ++i) {
      if (scored.logits[i]) scores[i].push_back(TemperatureScore(*scored.logits[i]));
    }
  }
  std::vector<std::optional<double>> mean(spans.size());
  for (size_t i = 0; i < spans.size(); ++i) {
    if (scores[i].empty()) continue;
    // Sorted summation makes the mean independent of member order.
    std::sort(scores[i].begin(), scores[i].end());
    double sum = 0.0;
    for (double v : scores[i]) sum += v;
    mean[i] = sum / static_cast<double>(scores[i].size());
  }
  return mean;
}

PredictionSet EnsemblePredictDocuments(const TeacherEnsemble& ensemble,
                                       const std::vector<const Document*>& docs,
                                       Aggregation mode) {
  if (ensemble.members.empty()) throw ConfigError("empty teacher ensemble");
  std::vector<std::vector<MentionPrediction>> per_doc(docs.size());
  std::vector<size_t> dropped(docs.size(), 0), passes(docs.size(), 0);
  ParallelFor(docs.size(), [&](size_t d) {
    const Document& doc = *docs[d];
    const auto candidates = GenerateCandidates(doc, CandidateMode::kEval);
    std::vector<MentionSpan> spans;
    for (const auto& c : candidates) spans.push_back(c.span);
    const auto mean = EnsembleMeanScores(ensemble, doc, spans, &passes[d]);
    for (size_t i = 0; i < spans.size(); ++i) {
      if (!mean[i]) {
        ++dropped[d];
        continue;
      }
      MentionPrediction m;
      m.doc_id = doc.doc_id;
      m.entity_id = CandidateEntityKey(candidates[i]);
      m.token_start = spans[i].token_start;
      m.token_end = spans[i].token_end;
      m.score = *mean[i];
      const double q = std::clamp(m.score, ops::kProbabilityClamp,
                                  1.0 - ops::kProbabilityClamp);
      m.logit = std::log(q) - std::log1p(-q);
      m.gold = candidates[i].binary_label;
      m.provenance = candidates[i].provenance;
      per_doc[d].push_back(std::move(m));
    }
  });
  PredictionSet out;
  out.head_kind = "ensemble";
  for (size_t d = 0; d < docs.size(); ++d) {
    out.dropped += dropped[d];
    out.encode_passes += passes[d];
    for (auto& m : per_doc[d]) out.mentions.push_back(std::move(m));
  }
  out.records = BuildRecords(out.mentions, mode);
  return out;
}

}  // namespace salience
