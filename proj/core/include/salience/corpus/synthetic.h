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

#ifndef SALIENCE_CORPUS_SYNTHETIC_H_
#define SALIENCE_CORPUS_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "salience/corpus/types.h"

namespace salience {

// Salient iff mention count >= min_frequency OR the first mention starts
// before max_first_offset_fraction of the document's tokens.
struct SalientRule {
  int64_t min_frequency = 3;
  double max_first_offset_fraction = 0.1;

  bool Evaluate(int64_t mention_count, int64_t first_start,
                int64_t doc_len) const;
};

// Generator for corpora whose labels are a known function of mention
// statistics. Documents are sequences of filler words ("w0".."w{n-1}")
// carrying single-token named entities ("ent0".."ent{n-1}") and multi-word
// filler phrases annotated as extra entities (the negatives).
struct SyntheticConfig {
  size_t n_docs = 275;
  size_t doc_len_min = 40;  // body tokens
  size_t doc_len_max = 64;
  size_t vocab_size = 8;    // distinct filler words
  size_t entity_names = 6;  // distinct entity names shared across documents
  size_t entities_per_doc_min = 3;
  size_t entities_per_doc_max = 6;
  // P(frequency = i + 1) proportional to frequency_weights[i].
  std::vector<double> frequency_weights = {0.35, 0.2, 0.15, 0.15, 0.15};
  SalientRule salient_rule;
  size_t negatives_per_doc = 2;  // two-word filler phrases, one mention each
  // Probability that a negative phrase also gets an overlapping three-word
  // extension annotated as a separate entity ("new york" / "new york times").
  double nested_negative_prob = 0.3;
  // Probability that the first body token is a mention of one of the
  // document's named entities.
  double lead_mention_prob = 0.3;
  uint64_t seed = 1;

  // Throws ConfigError on inconsistent values.
  void Validate() const;
};

// Every entity's label equals salient_rule applied to its realized mentions.
// Salient entities get Excellent when they pass the frequency test, Good when
// only the position test holds; others get Bad. All documents are assigned
// to the Train split. Deterministic in config.seed.
Corpus SynthGenerate(const SyntheticConfig& config);

}  // namespace salience

#endif  // SALIENCE_CORPUS_SYNTHETIC_H_
