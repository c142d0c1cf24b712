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

#ifndef SALIENCE_HEADS_MLP_HEAD_H_
#define SALIENCE_HEADS_MLP_HEAD_H_

#include <string>

#include "salience/random.h"
#include "salience/tensor/parameters.h"

namespace salience {

inline size_t MlpHiddenDim(size_t input_dim) { return input_dim / 2; }

// Two-layer MLP: input -> floor(input/2) with ReLU -> one logit.
void AddMlpHead(size_t input_dim, ParameterSet& params, Rng& rng,
                const std::string& prefix = "head");

// features [n, input_dim] -> logits [n, 1].
Var MlpLogits(const ParameterSet& params, const Var& features,
              const std::string& prefix = "head");

}  // namespace salience

#endif  // SALIENCE_HEADS_MLP_HEAD_H_
