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

#ifndef SALIENCE_HEADS_MODEL_H_
#define SALIENCE_HEADS_MODEL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "salience/corpus/tokenizer.h"
#include "salience/corpus/types.h"
#include "salience/encoder/encoder.h"
#include "salience/tensor/parameters.h"

namespace salience {

enum class HeadKind { kTagging, kPooling, kPoolingWithTags, kStandardCls };

std::string_view ToString(HeadKind kind);
// Accepts "tagging", "pooling", "pooling-tags" and "standard".
HeadKind ParseHeadKind(std::string_view name);

bool UsesCandidateTags(HeadKind kind);
size_t HeadInputDim(HeadKind kind, size_t d_model);

struct SalienceModel {
  EncoderConfig encoder;
  HeadKind head = HeadKind::kPooling;
  Vocab vocab;
  ParameterSet params;

  // Fresh weights; the encoder vocab size and seed are filled in.
  static SalienceModel Create(const Vocab& vocab, EncoderConfig encoder,
                              HeadKind head, uint64_t seed);

  // Directory holding config.json, vocab.json and weights.ckpt.
  void Save(const std::string& dir) const;
  static SalienceModel Load(const std::string& dir);

  SalienceModel Clone() const;

  std::vector<TokenId> DocumentIds(const Document& doc) const;
};

}  // namespace salience

#endif  // SALIENCE_HEADS_MODEL_H_
