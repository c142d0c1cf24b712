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

#include "salience/corpus/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>

#include "salience/corpus/tokenizer.h"
#include "salience/errors.h"
#include "salience/random.h"

namespace salience {
namespace {

struct PlannedEntity {
  std::string id;
  std::string surface;
  std::optional<std::string> wiki;
  std::vector<std::pair<int64_t, int64_t>> spans;
};

std::string Join(const std::vector<std::string>& words, int64_t begin,
                 int64_t end) {
  std::string out;
  for (int64_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += words[i];
  }
  return out;
}

}  // namespace

bool SalientRule::Evaluate(int64_t mention_count, int64_t first_start,
                           int64_t doc_len) const {
  if (mention_count <= 0 || doc_len <= 0) return false;
  if (mention_count >= min_frequency) return true;
  return static_cast<double>(first_start) / static_cast<double>(doc_len) <
         max_first_offset_fraction;
}

void SyntheticConfig::Validate() const {
  if (doc_len_min > doc_len_max) {
    throw ConfigError("synthetic doc_len_range min " +
                      std::to_string(doc_len_min) + " > max " +
                      std::to_string(doc_len_max));
  }
  if (doc_len_min < 4) throw ConfigError("synthetic doc_len_min must be >= 4");
  if (vocab_size == 0) throw ConfigError("synthetic vocab_size must be > 0");
  if (entities_per_doc_min > entities_per_doc_max) {
    throw ConfigError("synthetic entities_per_doc min > max");
  }
  if (entities_per_doc_max > entity_names) {
    throw ConfigError("synthetic entities_per_doc_max exceeds entity_names");
  }
  if (frequency_weights.empty()) {
    throw ConfigError("synthetic frequency_weights must be non-empty");
  }
  double total = 0.0;
  for (double w : frequency_weights) {
    if (!(w >= 0.0)) throw ConfigError("synthetic frequency weight < 0");
    total += w;
  }
  if (total <= 0.0) throw ConfigError("synthetic frequency weights sum to 0");
  const double f = salient_rule.max_first_offset_fraction;
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ConfigError("max_first_offset_fraction must lie in [0, 1]");
  }
  if (!(nested_negative_prob >= 0.0 && nested_negative_prob <= 1.0) ||
      !(lead_mention_prob >= 0.0 && lead_mention_prob <= 1.0)) {
    throw ConfigError("synthetic probabilities must lie in [0, 1]");
  }
}

Corpus SynthGenerate(const SyntheticConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  Corpus corpus;
  corpus.documents.reserve(config.n_docs);

  for (size_t d = 0; d < config.n_docs; ++d) {
    const auto len = rng.UniformRange(static_cast<int64_t>(config.doc_len_min),
                                      static_cast<int64_t>(config.doc_len_max));
    std::vector<std::string> words(len);
    for (auto& w : words) {
      w = "w" + std::to_string(rng.UniformInt(config.vocab_size));
    }
    std::vector<bool> used(len, false);
    std::vector<PlannedEntity> planned;

    // Negatives: filler phrases starting at or after the position cut-off.
    const auto cutoff = static_cast<int64_t>(std::ceil(
        config.salient_rule.max_first_offset_fraction * static_cast<double>(len)));
    for (size_t k = 0; k < config.negatives_per_doc; ++k) {
      const bool nested = rng.Bernoulli(config.nested_negative_prob);
      const int64_t width = nested ? 3 : 2;
      if (len - width < cutoff) break;
      for (int attempt = 0; attempt < 64; ++attempt) {
        const int64_t start = rng.UniformRange(cutoff, len - width);
        bool free = true;
        for (int64_t i = start; i < start + width; ++i) free = free && !used[i];
        if (!free) continue;
        for (int64_t i = start; i < start + width; ++i) used[i] = true;
        const std::string id = "neg" + std::to_string(k);
        planned.push_back({id, "", std::nullopt, {{start, start + 2}}});
        if (nested) {
          planned.push_back({id + "x", "", std::nullopt, {{start, start + 3}}});
        }
        break;
      }
    }

    // Named entities.
    const auto n_entities = static_cast<size_t>(
        rng.UniformRange(static_cast<int64_t>(config.entities_per_doc_min),
                         static_cast<int64_t>(config.entities_per_doc_max)));
    std::vector<size_t> names(config.entity_names);
    std::iota(names.begin(), names.end(), size_t{0});
    rng.Shuffle(names);
    names.resize(n_entities);
    std::vector<size_t> frequency(n_entities);
    for (auto& f : frequency) f = rng.Categorical(config.frequency_weights) + 1;

    std::vector<std::vector<int64_t>> positions(n_entities);
    if (n_entities > 0 && !used[0] && rng.Bernoulli(config.lead_mention_prob)) {
      const size_t lead = rng.UniformInt(n_entities);
      positions[lead].push_back(0);
      used[0] = true;
    }
    std::vector<int64_t> free_slots;
    for (int64_t i = 0; i < len; ++i) {
      if (!used[i]) free_slots.push_back(i);
    }
    rng.Shuffle(free_slots);
    size_t next_slot = 0;
    for (size_t e = 0; e < n_entities; ++e) {
      while (positions[e].size() < frequency[e] &&
             next_slot < free_slots.size()) {
        positions[e].push_back(free_slots[next_slot++]);
      }
      std::sort(positions[e].begin(), positions[e].end());
      const std::string name = "ent" + std::to_string(names[e]);
      PlannedEntity p{name, name, "Ent_" + std::to_string(names[e]), {}};
      for (int64_t pos : positions[e]) {
        words[pos] = name;
        p.spans.emplace_back(pos, pos + 1);
      }
      if (!p.spans.empty()) planned.push_back(std::move(p));
    }

    Document doc;
    char id_buf[64];
    std::snprintf(id_buf, sizeof(id_buf), "synth-%llu-%05zu",
                  static_cast<unsigned long long>(config.seed), d);
    doc.doc_id = id_buf;
    doc.body = Join(words, 0, len);
    doc.words = DocumentWords(doc.title, doc.body, TokenizerSpec{});
    doc.split = Split::kTrain;

    for (auto& p : planned) {
      const auto& [first_start, first_end] = p.spans.front();
      if (p.surface.empty()) p.surface = Join(words, first_start, first_end);
      const auto count = static_cast<int64_t>(p.spans.size());
      const bool by_freq = count >= config.salient_rule.min_frequency;
      const bool salient = config.salient_rule.Evaluate(
          count, first_start, static_cast<int64_t>(doc.words.size()));
      EntityAnnotation a;
      a.entity_id = p.id;
      a.canonical_name = p.surface;
      a.wiki_entity = p.wiki;
      a.label = !salient  ? SalienceLevel::kBad
                : by_freq ? SalienceLevel::kExcellent
                          : SalienceLevel::kGood;
      doc.annotations.push_back(std::move(a));
      for (const auto& [s, e] : p.spans) {
        doc.mentions.push_back({p.id, s, e, Join(words, s, e)});
      }
    }
    std::stable_sort(doc.mentions.begin(), doc.mentions.end(),
                     [](const MentionSpan& a, const MentionSpan& b) {
                       return a.token_start != b.token_start
                                  ? a.token_start < b.token_start
                                  : a.token_end < b.token_end;
                     });
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace salience
