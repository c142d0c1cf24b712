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

#include "salience/heads/scoring.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "salience/encoder/candidate_tags.h"
#include "salience/encoder/encoder.h"
#include "salience/errors.h"
#include "salience/heads/mlp_head.h"
#include "salience/heads/selection.h"
#include "salience/tensor/ops.h"

namespace salience {
namespace {

size_t Start(const MentionSpan& s) { return static_cast<size_t>(s.token_start); }
size_t End(const MentionSpan& s) { return static_cast<size_t>(s.token_end); }

std::vector<TokenId> WithCls(std::span<const TokenId> ids, size_t n) {
  std::vector<TokenId> out;
  out.reserve(n + 1);
  out.push_back(kClsId);
  out.insert(out.end(), ids.begin(), ids.begin() + n);
  return out;
}

// Longest document prefix such that [CLS] + prefix + tags of the spans
// ending inside it fits the window.
size_t TaggedPrefix(std::span<const MentionSpan> spans,
                    const std::vector<size_t>& pass, size_t n_doc,
                    size_t max_len) {
  size_t n = std::min(n_doc, max_len - 1);
  while (n > 0) {
    size_t k = 0;
    for (size_t i : pass) k += End(spans[i]) <= n ? 1 : 0;
    if (1 + n + 2 * k <= max_len) break;
    --n;
  }
  return n;
}

struct TaggedPass {
  std::vector<size_t> scored;
  Var logits;
};

TaggedPass RunTaggedPass(const SalienceModel& model,
                         std::span<const TokenId> doc_ids,
                         std::span<const MentionSpan> spans,
                         const std::vector<size_t>& pass, Rng* dropout_rng) {
  const size_t max_len = model.encoder.max_len;
  const size_t n = TaggedPrefix(spans, pass, doc_ids.size(), max_len);
  TaggedPass out;
  std::vector<MentionSpan> shifted;
  for (size_t i : pass) {
    if (End(spans[i]) > n) continue;
    out.scored.push_back(i);
    MentionSpan s = spans[i];
    s.token_start += 1;
    s.token_end += 1;
    shifted.push_back(std::move(s));
  }
  if (out.scored.empty()) return out;
  const auto ids = WithCls(doc_ids, n);
  const TaggedSequence tagged = InsertCandidateTags(ids, shifted, max_len);
  const Var reps =
      Encode(model.encoder, model.params, tagged.tokens, {}, dropout_rng);
  out.logits = model.head == HeadKind::kTagging
                   ? ScoreTagging(model, reps, tagged.close_indices)
                   : ScorePoolingWithTags(model, reps, tagged.inner_spans);
  return out;
}

}  // namespace

Var PoolSpan(const Var& reps, size_t start, size_t end) {
  if (start >= end) throw DomainError("cannot pool an empty span");
  return ops::Concat({ops::MeanOverSpan(reps, start, end),
                      ops::MaxOverSpan(reps, start, end)});
}

Var ScorePooling(const SalienceModel& model, const Var& reps,
                 std::span<const std::pair<size_t, size_t>> rows) {
  std::vector<Var> feats;
  feats.reserve(rows.size());
  for (const auto& [b, e] : rows) feats.push_back(PoolSpan(reps, b, e));
  return MlpLogits(model.params, ops::StackRows(feats));
}

Var ScoreTagging(const SalienceModel& model, const Var& tagged_reps,
                 std::span<const size_t> close_indices) {
  for (size_t i : close_indices) {
    if (i >= tagged_reps.value().rows()) {
      throw DomainError("close-tag index " + std::to_string(i) +
                        " outside encoded sequence");
    }
  }
  return MlpLogits(model.params, ops::SelectRows(tagged_reps, close_indices));
}

Var ScorePoolingWithTags(const SalienceModel& model, const Var& tagged_reps,
                         std::span<const std::pair<size_t, size_t>> inner) {
  return ScorePooling(model, tagged_reps, inner);
}

Var ScoreStandard(const SalienceModel& model, const Var& reps) {
  const size_t first[] = {0};
  return MlpLogits(model.params, ops::SelectRows(reps, first));
}

std::vector<TokenId> StandardInput(std::span<const TokenId> doc_ids,
                                   const MentionSpan& span, size_t max_len) {
  if (max_len < 3) throw ConfigError("max_len too small for the standard input");
  const size_t mention = std::min(End(span) - Start(span), max_len - 2);
  std::vector<TokenId> out;
  out.reserve(max_len);
  out.push_back(kClsId);
  out.insert(out.end(), doc_ids.begin() + Start(span),
             doc_ids.begin() + Start(span) + mention);
  out.push_back(kSepId);
  const size_t room = max_len - out.size();
  out.insert(out.end(), doc_ids.begin(),
             doc_ids.begin() + std::min(room, doc_ids.size()));
  return out;
}

DocumentScoring ScoreDocument(const SalienceModel& model,
                              std::span<const TokenId> doc_ids,
                              std::span<const MentionSpan> spans, PassMode mode,
                              Rng* dropout_rng) {
  const size_t max_len = model.encoder.max_len;
  for (const auto& s : spans) {
    if (s.token_start < 0 || s.token_start >= s.token_end ||
        End(s) > doc_ids.size()) {
      throw DomainError("candidate span (" + std::to_string(s.token_start) +
                        "," + std::to_string(s.token_end) +
                        ") outside document of " +
                        std::to_string(doc_ids.size()) + " tokens");
    }
  }
  if (max_len < 4) throw ConfigError("max_len must be at least 4 for scoring");
  DocumentScoring out;
  if (spans.empty()) return out;

  if (model.head == HeadKind::kStandardCls) {
    std::vector<Var> rows;
    for (size_t i = 0; i < spans.size(); ++i) {
      const auto ids = StandardInput(doc_ids, spans[i], max_len);
      const Var reps = Encode(model.encoder, model.params, ids, {}, dropout_rng);
      ++out.encode_passes;
      rows.push_back(ScoreStandard(model, reps));
      out.scored.push_back(i);
    }
    out.logits = rows.size() == 1 ? rows[0] : ops::Reshape(ops::Concat(rows),
                                                           {rows.size(), 1});
    return out;
  }

  // Spans that cannot fit the window even on their own.
  const size_t limit = UsesCandidateTags(model.head) ? max_len - 3 : max_len - 1;
  std::vector<size_t> eligible;
  for (size_t i = 0; i < spans.size(); ++i) {
    (End(spans[i]) <= limit ? eligible : out.dropped).push_back(i);
  }
  if (eligible.empty()) return out;

  if (model.head == HeadKind::kPooling) {
    const size_t n = std::min(doc_ids.size(), max_len - 1);
    const auto ids = WithCls(doc_ids, n);
    const Var reps = Encode(model.encoder, model.params, ids, {}, dropout_rng);
    out.encode_passes = 1;
    std::vector<std::pair<size_t, size_t>> rows;
    for (size_t i : eligible) rows.emplace_back(Start(spans[i]) + 1, End(spans[i]) + 1);
    out.logits = ScorePooling(model, reps, rows);
    out.scored = eligible;
    return out;
  }

  std::vector<MentionSpan> pool;
  for (size_t i : eligible) pool.push_back(spans[i]);
  std::vector<Var> parts;
  if (mode == PassMode::kTraining) {
    std::vector<size_t> pass;
    for (size_t j : SelectNonOverlapping(pool, SelectionPolicy::kLongestFirst)) {
      pass.push_back(eligible[j]);
    }
    TaggedPass p = RunTaggedPass(model, doc_ids, spans, pass, dropout_rng);
    ++out.encode_passes;
    out.scored = std::move(p.scored);
    out.logits = p.logits;
    return out;
  }
  std::vector<size_t> remaining = eligible;
  while (!remaining.empty()) {
    std::vector<MentionSpan> rest;
    for (size_t i : remaining) rest.push_back(spans[i]);
    std::vector<size_t> pass;
    for (size_t j : SelectNonOverlapping(rest, SelectionPolicy::kLongestFirst)) {
      pass.push_back(remaining[j]);
    }
    TaggedPass p = RunTaggedPass(model, doc_ids, spans, pass, dropout_rng);
    ++out.encode_passes;
    for (size_t i : p.scored) {
      out.scored.push_back(i);
      remaining.erase(std::find(remaining.begin(), remaining.end(), i));
    }
    parts.push_back(p.logits);
  }
  if (parts.size() == 1) {
    out.logits = parts[0];
  } else {
    std::vector<Var> flat;
    for (const Var& v : parts) flat.push_back(ops::Reshape(v, {v.value().size()}));
    out.logits = ops::Reshape(ops::Concat(flat), {out.scored.size(), 1});
  }
  return out;
}

CandidateLogits InferLogits(const SalienceModel& model,
                            std::span<const TokenId> doc_ids,
                            std::span<const MentionSpan> spans) {
  NoGradGuard guard;
  const DocumentScoring s = ScoreDocument(model, doc_ids, spans,
                                          PassMode::kInference);
  CandidateLogits out;
  out.logits.resize(spans.size());
  for (size_t r = 0; r < s.scored.size(); ++r) {
    out.logits[s.scored[r]] = s.logits.value()[r];
  }
  out.dropped = s.dropped;
  out.encode_passes = s.encode_passes;
  return out;
}

double TemperatureScore(double logit, double temperature) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  const double z = logit / temperature;
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                  : std::exp(z) / (1.0 + std::exp(z));
}

}  // namespace salience
