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

#ifndef SALIENCE_ENCODER_ENCODER_H_
#define SALIENCE_ENCODER_ENCODER_H_

#include <cstdint>
#include <span>

#include "salience/corpus/tokenizer.h"
#include "salience/random.h"
#include "salience/tensor/parameters.h"

namespace salience {

struct EncoderConfig {
  size_t vocab_size = 0;
  size_t d_model = 64;
  size_t n_layers = 2;
  size_t n_heads = 4;
  size_t d_ff = 128;
  size_t max_len = 128;
  double dropout_rate = 0.0;
  uint64_t seed = 0;

  void Validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

// Registers "encoder.*" parameters, drawn from `rng`.
void AddEncoderParameters(const EncoderConfig& config, ParameterSet& params,
                          Rng& rng);

// Pre-LN transformer over one sequence. `mask[i]` is false for padding
// positions, which are excluded as attention keys. An empty mask means no
// padding. Dropout is active only when `dropout_rng` is non-null.
Var Encode(const EncoderConfig& config, const ParameterSet& params,
           std::span<const TokenId> tokens, std::span<const bool> mask = {},
           Rng* dropout_rng = nullptr);

}  // namespace salience

#endif  // SALIENCE_ENCODER_ENCODER_H_
